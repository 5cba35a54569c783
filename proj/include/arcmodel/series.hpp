#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "arcmodel/errors.hpp"
#include "arcmodel/field.hpp"
#include "arcmodel/test_ring.hpp"

namespace arcmodel {

namespace detail {

template <class C>
std::string coeff_text(const C& c)
{
    std::string s = c.str();
    bool compound = s.find_first_of("+*") != std::string::npos || s.find(" - ") != std::string::npos;
    return compound ? "(" + s + ")" : s;
}

template <class C>
std::string term_text(const C& c, std::size_t k)
{
    std::string power = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
    std::string s = coeff_text(c);
    if (k == 0) return s;
    if (s == "1") return power;
    if (s == "-1") return "-" + power;
    return s + "*" + power;
}

/// acc += a * b, fused when the coefficient type supports it.
template <class C>
void add_product(C& acc, const C& a, const C& b)
{
    if constexpr (requires { acc.add_product(a, b); })
        acc.add_product(a, b);
    else
        acc += a * b;
}

} // namespace detail

/// A polynomial in t with coefficients in C (RingElem, MultiPoly, Scalar).
/// The coefficient list never ends in a zero.
template <class C>
class Poly {
public:
    explicit Poly(const C& zero) : zero_(zero.zero_like()) {}
    Poly(std::vector<C> coeffs, const C& zero) : coeffs_(std::move(coeffs)), zero_(zero.zero_like()) { trim(); }

    static Poly monomial(const C& c, std::size_t degree)
    {
        std::vector<C> v(degree + 1, c.zero_like());
        v[degree] = c;
        return Poly(std::move(v), c);
    }
    static Poly constant(const C& c) { return monomial(c, 0); }
    /// t^d with coefficients in the ring of `one`.
    static Poly t_power(const C& one, std::size_t degree) { return monomial(one.one_like(), degree); }

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const std::vector<C>& coeffs() const noexcept { return coeffs_; }
    const C& zero() const noexcept { return zero_; }
    const C& operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : zero_; }
    /// Lowest index with a nonzero coefficient; 0 for the zero polynomial.
    std::size_t order() const
    {
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (!coeffs_[i].is_zero()) return i;
        return 0;
    }

    bool is_monic() const
    {
        if (coeffs_.empty()) return false;
        return (coeffs_.back() - coeffs_.back().one_like()).is_zero();
    }

    Poly operator+(const Poly& o) const
    {
        std::vector<C> out(std::max(coeffs_.size(), o.coeffs_.size()), zero_);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*this)[i] + o[i];
        return Poly(std::move(out), zero_);
    }
    Poly operator-(const Poly& o) const
    {
        std::vector<C> out(std::max(coeffs_.size(), o.coeffs_.size()), zero_);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*this)[i] - o[i];
        return Poly(std::move(out), zero_);
    }
    Poly operator-() const
    {
        Poly out = *this;
        for (auto& c : out.coeffs_) c = -c;
        return out;
    }
    Poly operator*(const Poly& o) const
    {
        if (is_zero() || o.is_zero()) return Poly(zero_);
        std::vector<C> out(coeffs_.size() + o.coeffs_.size() - 1, zero_);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
                if (o.coeffs_[j].is_zero()) continue;
                detail::add_product(out[i + j], coeffs_[i], o.coeffs_[j]);
            }
        }
        return Poly(std::move(out), zero_);
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly scale(const Scalar& s) const
    {
        Poly out = *this;
        for (auto& c : out.coeffs_) c = c.scale(s);
        out.trim();
        return out;
    }
    Poly scale_by(const C& c) const
    {
        Poly out = *this;
        for (auto& x : out.coeffs_) x = x * c;
        out.trim();
        return out;
    }
    Poly pow(unsigned exponent) const
    {
        Poly result = one_like();
        Poly base = *this;
        while (exponent > 0) {
            if (exponent & 1U) result *= base;
            exponent >>= 1U;
            if (exponent > 0) base *= base;
        }
        return result;
    }
    /// Multiplies by t^k.
    Poly shift(std::size_t k) const
    {
        if (is_zero()) return *this;
        std::vector<C> out(k, zero_);
        out.insert(out.end(), coeffs_.begin(), coeffs_.end());
        return Poly(std::move(out), zero_);
    }
    /// Reduction modulo t^n.
    Poly truncate(std::size_t n) const
    {
        if (coeffs_.size() <= n) return *this;
        return Poly(std::vector<C>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(n)), zero_);
    }

    Poly zero_like() const { return Poly(zero_); }
    Poly one_like() const { return constant(zero_.one_like()); }

    /// Applies a coefficient map (e.g. a ring projection).
    template <class F>
    auto map(F&& f) const
    {
        using D = decltype(f(zero_));
        std::vector<D> out;
        out.reserve(coeffs_.size());
        for (const auto& c : coeffs_) out.push_back(f(c));
        return Poly<D>(std::move(out), f(zero_));
    }

    std::string str() const
    {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k].is_zero()) continue;
            std::string term = detail::term_text(coeffs_[k], k);
            if (out.empty()) {
                out = term;
            } else if (term[0] == '-') {
                out += " - " + term.substr(1);
            } else {
                out += " + " + term;
            }
        }
        return out;
    }

    friend bool operator==(const Poly& a, const Poly& b)
    {
        if (a.coeffs_.size() != b.coeffs_.size()) return false;
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            if (!(a.coeffs_[i] == b.coeffs_[i])) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<C> coeffs_;
    C zero_;
};

/// An element of C[[t]] known modulo t^N. The coefficient vector has exactly
/// N entries; N = 0 means nothing is known.
template <class C>
class Series {
public:
    Series(std::vector<C> coeffs, const C& zero) : coeffs_(std::move(coeffs)), zero_(zero.zero_like()) {}
    /// The zero series at the given precision.
    Series(const C& zero, std::size_t precision) : coeffs_(precision, zero.zero_like()), zero_(zero.zero_like()) {}

    static Series from_poly(const Poly<C>& p, std::size_t precision)
    {
        std::vector<C> v(precision, p.zero());
        for (std::size_t i = 0; i < precision; ++i) v[i] = p[i];
        return Series(std::move(v), p.zero());
    }

    std::size_t precision() const noexcept { return coeffs_.size(); }
    const std::vector<C>& coeffs() const noexcept { return coeffs_; }
    const C& operator[](std::size_t i) const { return coeffs_.at(i); }
    const C& zero() const noexcept { return zero_; }

    /// Index of the first nonzero known coefficient, or the precision.
    std::size_t order() const
    {
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (!coeffs_[i].is_zero()) return i;
        return coeffs_.size();
    }
    bool is_zero() const { return order() == coeffs_.size(); }

    /// The known coefficients as a polynomial (zero extension).
    Poly<C> to_poly() const { return Poly<C>(coeffs_, zero_); }

    Series truncate(std::size_t n) const
    {
        if (n > precision())
            fail(ErrorKind::precision_exhausted, "cannot truncate a series of precision " + std::to_string(precision()) + " to " + std::to_string(n));
        return Series(std::vector<C>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(n)), zero_);
    }

    Series operator+(const Series& o) const
    {
        const std::size_t n = std::min(precision(), o.precision());
        std::vector<C> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) out.push_back(coeffs_[i] + o.coeffs_[i]);
        return Series(std::move(out), zero_);
    }
    Series operator-(const Series& o) const
    {
        const std::size_t n = std::min(precision(), o.precision());
        std::vector<C> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) out.push_back(coeffs_[i] - o.coeffs_[i]);
        return Series(std::move(out), zero_);
    }
    Series operator-() const
    {
        Series out = *this;
        for (auto& c : out.coeffs_) c = -c;
        return out;
    }
    /// Precision of a product is the smaller precision.
    Series operator*(const Series& o) const
    {
        const std::size_t n = std::min(precision(), o.precision());
        std::vector<C> out(n, zero_);
        for (std::size_t i = 0; i < n; ++i) {
            if (coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; i + j < n; ++j) {
                if (o.coeffs_[j].is_zero()) continue;
                detail::add_product(out[i + j], coeffs_[i], o.coeffs_[j]);
            }
        }
        return Series(std::move(out), zero_);
    }
    /// An exact polynomial times a series known mod t^N is known mod t^(N + ord p).
    Series operator*(const Poly<C>& p) const
    {
        if (p.is_zero()) return Series(zero_, precision());
        const std::size_t n = precision() + p.order();
        std::vector<C> out(n, zero_);
        for (std::size_t i = 0; i < p.coeffs().size() && i < n; ++i) {
            if (p[i].is_zero()) continue;
            for (std::size_t j = 0; j < precision() && i + j < n; ++j) {
                if (coeffs_[j].is_zero()) continue;
                detail::add_product(out[i + j], p[i], coeffs_[j]);
            }
        }
        return Series(std::move(out), zero_);
    }
    Series& operator+=(const Series& o) { return *this = *this + o; }
    Series& operator-=(const Series& o) { return *this = *this - o; }
    Series& operator*=(const Series& o) { return *this = *this * o; }

    Series operator+(const Poly<C>& p) const { return *this + from_poly(p, precision()); }
    Series operator-(const Poly<C>& p) const { return *this - from_poly(p, precision()); }

    Series scale(const Scalar& s) const
    {
        Series out = *this;
        for (auto& c : out.coeffs_) c = c.scale(s);
        return out;
    }
    Series scale_by(const C& c) const
    {
        Series out = *this;
        for (auto& x : out.coeffs_) x = x * c;
        return out;
    }

    Series zero_like() const { return Series(zero_, precision()); }
    Series one_like() const
    {
        Series out(zero_, precision());
        if (precision() > 0) out.coeffs_[0] = zero_.one_like();
        return out;
    }

    /// Multiplicative inverse modulo t^N; the constant term must be a unit.
    Series invert() const
    {
        require(precision() > 0, ErrorKind::precision_exhausted, "cannot invert a series of precision 0");
        const C c0_inv = coeffs_[0].inverse();
        std::vector<C> g(precision(), zero_);
        g[0] = c0_inv;
        for (std::size_t k = 1; k < precision(); ++k) {
            C acc = zero_;
            for (std::size_t i = 1; i <= k; ++i)
                if (!coeffs_[i].is_zero()) detail::add_product(acc, coeffs_[i], g[k - i]);
            g[k] = -(acc * c0_inv);
        }
        return Series(std::move(g), zero_);
    }

    /// Divides by t^k: drops the first k coefficients, which must vanish.
    Series shift_down(std::size_t k) const
    {
        require(k <= precision(), ErrorKind::precision_exhausted, "shift exceeds precision");
        return Series(std::vector<C>(coeffs_.begin() + static_cast<std::ptrdiff_t>(k), coeffs_.end()), zero_);
    }

    template <class F>
    auto map(F&& f) const
    {
        using D = decltype(f(zero_));
        std::vector<D> out;
        out.reserve(coeffs_.size());
        for (const auto& c : coeffs_) out.push_back(f(c));
        return Series<D>(std::move(out), f(zero_));
    }

    /// Coefficientwise equality of the first n coefficients.
    bool agrees_with(const Series& o, std::size_t n) const
    {
        if (n > precision() || n > o.precision())
            fail(ErrorKind::precision_exhausted, "comparison at precision " + std::to_string(n) + " exceeds operand precision");
        for (std::size_t i = 0; i < n; ++i)
            if (!(coeffs_[i] == o.coeffs_[i])) return false;
        return true;
    }

    /// "c0 + c1*t + ... + O(t^N)".
    std::string str() const
    {
        std::string out;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k].is_zero()) continue;
            std::string term = detail::term_text(coeffs_[k], k);
            if (out.empty()) {
                out = term;
            } else if (term[0] == '-') {
                out += " - " + term.substr(1);
            } else {
                out += " + " + term;
            }
        }
        std::string big_o = "O(t^" + std::to_string(precision()) + ")";
        return out.empty() ? big_o : out + " + " + big_o;
    }

    /// Equality is only defined at equal precision.
    friend bool operator==(const Series& a, const Series& b)
    {
        if (a.precision() != b.precision())
            fail(ErrorKind::structural, "series compared at different precisions " + std::to_string(a.precision()) + " and " +
                    std::to_string(b.precision()));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            if (!(a.coeffs_[i] == b.coeffs_[i])) return false;
        return true;
    }
    friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

private:
    std::vector<C> coeffs_;
    C zero_;
};

template <class C>
Series<C> series_invert(const Series<C>& f)
{
    return f.invert();
}

template <class C>
struct PolyDivMod {
    Poly<C> quotient;
    Poly<C> remainder;
};

template <class C>
struct SeriesDivMod {
    Series<C> quotient;
    Poly<C> remainder;
};

/// Extra precision that division of a truncated series by g needs before the
/// remainder is determined. Zero for coefficient types without a nilpotent ideal.
template <class C>
std::size_t series_division_margin(const Poly<C>&)
{
    return 0;
}

/// Over a test ring: g must be distinguished (g = t^d mod m); the unknown tail
/// of the dividend then reaches the remainder only through m^(N-d+1).
std::size_t series_division_margin(const Poly<RingElem>& g);

/// f = g*h + r with deg r < deg g, for monic g. Exact.
template <class C>
PolyDivMod<C> poly_divmod_monic(const Poly<C>& f, const Poly<C>& g)
{
    if (!g.is_monic()) fail(ErrorKind::not_monic, "divisor " + g.str() + " is not monic");
    const std::size_t d = static_cast<std::size_t>(g.degree());
    if (f.degree() < g.degree()) return {Poly<C>(f.zero()), f};
    std::vector<C> rem = f.coeffs();
    std::vector<C> quot(rem.size() - d, f.zero());
    for (std::size_t k = rem.size(); k-- > d;) {
        C lead = rem[k];
        if (lead.is_zero()) continue;
        quot[k - d] = lead;
        for (std::size_t i = 0; i <= d; ++i) rem[k - d + i] -= lead * g[i];
    }
    rem.resize(d, f.zero());
    return {Poly<C>(std::move(quot), f.zero()), Poly<C>(std::move(rem), f.zero())};
}

/// Division of a series known mod t^N by a monic polynomial of degree d. The
/// known coefficients are divided as a polynomial; the quotient carries
/// precision N - d.
template <class C>
SeriesDivMod<C> poly_divmod_monic(const Series<C>& f, const Poly<C>& g)
{
    if (!g.is_monic()) fail(ErrorKind::not_monic, "divisor " + g.str() + " is not monic");
    const std::size_t d = static_cast<std::size_t>(g.degree());
    const std::size_t margin = series_division_margin(g);
    if (f.precision() < d + margin)
        fail(ErrorKind::precision_exhausted, "dividing a series of precision " + std::to_string(f.precision()) + " by a degree-" + std::to_string(d) +
                " polynomial needs precision at least " + std::to_string(d + margin));
    auto [q, r] = poly_divmod_monic(f.to_poly(), g);
    return {Series<C>::from_poly(q, f.precision() - d), r};
}

} // namespace arcmodel
