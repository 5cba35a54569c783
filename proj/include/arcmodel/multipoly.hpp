#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arcmodel/errors.hpp"
#include "arcmodel/field.hpp"
#include "arcmodel/test_ring.hpp"

namespace arcmodel {

/// Ordered, named indeterminates over a field. Shared by every polynomial
/// built on it; polynomials over different sets never mix.
class VariableSet {
public:
    using Ptr = std::shared_ptr<const VariableSet>;

    static Ptr make(Field field, std::vector<std::string> names);

    const Field& field() const noexcept { return field_; }
    const std::vector<std::string>& names() const noexcept { return names_; }
    std::size_t size() const noexcept { return names_.size(); }
    /// Index of a name, or -1.
    int index_of(std::string_view name) const;

    bool same_as(const VariableSet& other) const noexcept
    {
        return this == &other || (field_ == other.field_ && names_ == other.names_);
    }

private:
    VariableSet(Field field, std::vector<std::string> names) : field_(field), names_(std::move(names)) {}

    Field field_;
    std::vector<std::string> names_;
};

/// A sparse multivariate polynomial over k. Terms are kept in descending
/// graded-lex order with no zero coefficients, so equal polynomials have
/// identical term lists.
class MultiPoly {
public:
    struct Term {
        Exponents exponents;
        Scalar coeff;
        friend bool operator==(const Term& a, const Term& b) { return a.exponents == b.exponents && a.coeff == b.coeff; }
    };

    explicit MultiPoly(VariableSet::Ptr vars);
    MultiPoly(VariableSet::Ptr vars, std::vector<Term> terms);

    static MultiPoly constant(VariableSet::Ptr vars, const Scalar& c);
    static MultiPoly variable(VariableSet::Ptr vars, std::size_t index);
    /// Parses with the shared expression grammar; unknown identifiers are errors.
    static MultiPoly parse(VariableSet::Ptr vars, std::string_view text);

    const VariableSet::Ptr& vars() const noexcept { return vars_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::uint32_t total_degree() const;
    /// Largest exponent of one variable.
    std::uint32_t degree_in(std::size_t var) const;
    bool is_constant() const;

    MultiPoly operator+(const MultiPoly& other) const;
    MultiPoly operator-(const MultiPoly& other) const;
    MultiPoly operator*(const MultiPoly& other) const;
    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& other) { return *this = *this + other; }
    MultiPoly& operator-=(const MultiPoly& other) { return *this = *this - other; }
    MultiPoly& operator*=(const MultiPoly& other) { return *this = *this * other; }
    MultiPoly pow(unsigned exponent) const;
    MultiPoly scale(const Scalar& s) const;

    MultiPoly zero_like() const { return MultiPoly(vars_); }
    MultiPoly one_like() const { return constant(vars_, vars_->field().one()); }

    /// Formal partial derivative (exponent times coefficient, taken in k).
    MultiPoly derivative(std::size_t var) const;

    /// Substitutes values of any commutative coefficient type R, which must
    /// provide +, *, scale(Scalar). `one` fixes the target ring.
    template <class R>
    R evaluate(std::span<const R> values, const R& one) const;

    /// Canonical text, e.g. "x1^2 + y1*x2 - 3".
    std::string str() const;

    friend bool operator==(const MultiPoly& a, const MultiPoly& b);
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

private:
    void check_same_vars(const MultiPoly& other) const;
    void normalize();

    VariableSet::Ptr vars_;
    std::vector<Term> terms_;
};

template <class R>
R MultiPoly::evaluate(std::span<const R> values, const R& one) const
{
    require(values.size() == vars_->size(), ErrorKind::structural,
            "evaluation needs " + std::to_string(vars_->size()) + " values, got " + std::to_string(values.size()));
    // Cache powers per variable; the graded order makes high powers rare.
    std::vector<std::vector<R>> powers(values.size());
    auto power = [&](std::size_t var, std::uint32_t e) -> const R& {
        auto& cache = powers[var];
        if (cache.empty()) cache.push_back(one);
        while (cache.size() <= e) cache.push_back(cache.back() * values[var]);
        return cache[e];
    };
    R result = one.zero_like();
    for (const auto& term : terms_) {
        R value = one.scale(term.coeff);
        for (std::size_t v = 0; v < term.exponents.size(); ++v)
            if (term.exponents[v] > 0) value = value * power(v, term.exponents[v]);
        result = result + value;
    }
    return result;
}

/// Parses a ring element written in the generators of its ring, e.g. "1 + 2*e - e^2".
/// Monomials outside the basis vanish.
RingElem parse_ring_element(const TestRing::Ptr& ring, std::string_view text);

/// Formal partial derivatives d p_i / d vars[j] as a row-major rows x cols table.
std::vector<MultiPoly> jacobian(std::span<const MultiPoly> polys, std::span<const std::size_t> vars);

} // namespace arcmodel
