#include "arcmodel/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace arcmodel {

VariableSet::Ptr VariableSet::make(Field field, std::vector<std::string> names)
{
    std::set<std::string> seen;
    for (const auto& n : names) {
        require(!n.empty() && std::isalpha(static_cast<unsigned char>(n[0])), ErrorKind::structural,
                "invalid variable name '" + n + "'");
        require(seen.insert(n).second, ErrorKind::structural, "duplicate variable '" + n + "'");
    }
    return Ptr(new VariableSet(field, std::move(names)));
}

int VariableSet::index_of(std::string_view name) const
{
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    return -1;
}

namespace {

struct GrlexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const { return grlex_less(b, a); }
};

using TermMap = std::map<Exponents, Scalar, GrlexGreater>;

} // namespace

MultiPoly::MultiPoly(VariableSet::Ptr vars) : vars_(std::move(vars))
{
    require(vars_ != nullptr, ErrorKind::structural, "polynomial without variables");
}

MultiPoly::MultiPoly(VariableSet::Ptr vars, std::vector<Term> terms) : vars_(std::move(vars)), terms_(std::move(terms))
{
    require(vars_ != nullptr, ErrorKind::structural, "polynomial without variables");
    for (const auto& t : terms_) {
        require(t.exponents.size() == vars_->size(), ErrorKind::structural, "term has wrong arity");
        require(t.coeff.modulus() == vars_->field().modulus(), ErrorKind::structural, "coefficient from another field");
    }
    normalize();
}

void MultiPoly::normalize()
{
    TermMap acc;
    for (auto& t : terms_) {
        auto [it, inserted] = acc.try_emplace(std::move(t.exponents), t.coeff);
        if (!inserted) it->second += t.coeff;
    }
    terms_.clear();
    for (auto& [e, c] : acc)
        if (!c.is_zero()) terms_.push_back({e, c});
}

MultiPoly MultiPoly::constant(VariableSet::Ptr vars, const Scalar& c)
{
    MultiPoly p(vars);
    if (!c.is_zero()) p.terms_.push_back({Exponents(p.vars_->size(), 0), c});
    return p;
}

MultiPoly MultiPoly::variable(VariableSet::Ptr vars, std::size_t index)
{
    require(index < vars->size(), ErrorKind::structural, "variable index out of range");
    MultiPoly p(vars);
    Exponents e(p.vars_->size(), 0);
    e[index] = 1;
    p.terms_.push_back({std::move(e), p.vars_->field().one()});
    return p;
}

std::uint32_t MultiPoly::total_degree() const
{
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, arcmodel::total_degree(t.exponents));
    return d;
}

std::uint32_t MultiPoly::degree_in(std::size_t var) const
{
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.exponents[var]);
    return d;
}

bool MultiPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && arcmodel::total_degree(terms_[0].exponents) == 0); }

void MultiPoly::check_same_vars(const MultiPoly& other) const
{
    if (vars_ != other.vars_ && !vars_->same_as(*other.vars_))
        fail(ErrorKind::structural, "polynomials over different variable sets");
}

MultiPoly MultiPoly::operator+(const MultiPoly& other) const
{
    check_same_vars(other);
    MultiPoly out(vars_);
    out.terms_.reserve(terms_.size() + other.terms_.size());
    GrlexGreater before;
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < other.terms_.size()) {
        if (j == other.terms_.size() || (i < terms_.size() && before(terms_[i].exponents, other.terms_[j].exponents))) {
            out.terms_.push_back(terms_[i++]);
        } else if (i == terms_.size() || before(other.terms_[j].exponents, terms_[i].exponents)) {
            out.terms_.push_back(other.terms_[j++]);
        } else {
            Scalar c = terms_[i].coeff + other.terms_[j].coeff;
            if (!c.is_zero()) out.terms_.push_back({terms_[i].exponents, c});
            ++i;
            ++j;
        }
    }
    return out;
}

MultiPoly MultiPoly::operator-() const
{
    MultiPoly out = *this;
    for (auto& t : out.terms_) t.coeff = -t.coeff;
    return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& other) const { return *this + (-other); }

MultiPoly MultiPoly::operator*(const MultiPoly& other) const
{
    check_same_vars(other);
    if (is_zero() || other.is_zero()) return MultiPoly(vars_);
    TermMap acc;
    const std::size_t n = vars_->size();
    Exponents e(n);
    for (const auto& a : terms_)
        for (const auto& b : other.terms_) {
            for (std::size_t k = 0; k < n; ++k) e[k] = a.exponents[k] + b.exponents[k];
            Scalar c = a.coeff * b.coeff;
            auto [it, inserted] = acc.try_emplace(e, c);
            if (!inserted) it->second += c;
        }
    MultiPoly out(vars_);
    out.terms_.reserve(acc.size());
    for (auto& [exps, c] : acc)
        if (!c.is_zero()) out.terms_.push_back({exps, c});
    return out;
}

MultiPoly MultiPoly::pow(unsigned exponent) const
{
    MultiPoly result = one_like();
    MultiPoly base = *this;
    while (exponent > 0) {
        if (exponent & 1U) result *= base;
        exponent >>= 1U;
        if (exponent > 0) base *= base;
    }
    return result;
}

MultiPoly MultiPoly::scale(const Scalar& s) const
{
    if (s.is_zero()) return MultiPoly(vars_);
    MultiPoly out = *this;
    for (auto& t : out.terms_) t.coeff *= s;
    // Nonzero times nonzero stays nonzero in a field.
    return out;
}

MultiPoly MultiPoly::derivative(std::size_t var) const
{
    require(var < vars_->size(), ErrorKind::structural, "derivative variable out of range");
    std::vector<Term> out;
    for (const auto& t : terms_) {
        if (t.exponents[var] == 0) continue;
        Term d = t;
        d.coeff = t.coeff * vars_->field().from_int(static_cast<long>(t.exponents[var]));
        d.exponents[var] -= 1;
        out.push_back(std::move(d));
    }
    return MultiPoly(vars_, std::move(out));
}

std::string MultiPoly::str() const
{
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
        const bool neg = t.coeff.is_negative_literal();
        const Scalar mag = neg ? -t.coeff : t.coeff;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        std::string mono;
        for (std::size_t v = 0; v < t.exponents.size(); ++v) {
            if (t.exponents[v] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars_->names()[v];
            if (t.exponents[v] > 1) mono += "^" + std::to_string(t.exponents[v]);
        }
        if (mono.empty()) {
            out += mag.str();
        } else if (mag.is_one()) {
            out += mono;
        } else {
            out += mag.str() + "*" + mono;
        }
    }
    return out;
}

bool operator==(const MultiPoly& a, const MultiPoly& b)
{
    if (a.vars_ != b.vars_ && !a.vars_->same_as(*b.vars_)) return false;
    return a.terms_ == b.terms_;
}

std::vector<MultiPoly> jacobian(std::span<const MultiPoly> polys, std::span<const std::size_t> vars)
{
    std::vector<MultiPoly> out;
    out.reserve(polys.size() * vars.size());
    for (const auto& p : polys)
        for (auto v : vars) out.push_back(p.derivative(v));
    return out;
}

// ---------------------------------------------------------------------------
// Expression grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*      '/' only by a nonzero constant
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := integer | identifier | '(' expr ')'

namespace {

class ExpressionParser {
public:
    ExpressionParser(VariableSet::Ptr vars, std::string_view text) : vars_(std::move(vars)), text_(text) {}

    MultiPoly parse()
    {
        MultiPoly result = expr();
        skip_space();
        if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
        return result;
    }

private:
    [[noreturn]] void error(const std::string& what) const
    {
        fail(ErrorKind::parse, what + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    MultiPoly expr()
    {
        MultiPoly acc = term();
        while (true) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    MultiPoly term()
    {
        MultiPoly acc = unary();
        while (true) {
            if (accept('*')) {
                acc *= unary();
            } else if (accept('/')) {
                MultiPoly d = unary();
                if (!d.is_constant() || d.is_zero()) error("division only by a nonzero constant");
                acc = acc.scale(d.terms()[0].coeff.inverse());
            } else {
                return acc;
            }
        }
    }

    MultiPoly unary()
    {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    MultiPoly power()
    {
        MultiPoly base = primary();
        if (accept('^')) {
            skip_space();
            std::string digits;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) digits.push_back(text_[pos_++]);
            if (digits.empty()) error("expected a nonnegative integer exponent");
            if (digits.size() > 4) error("exponent too large");
            return base.pow(static_cast<unsigned>(std::stoul(digits)));
        }
        return base;
    }

    MultiPoly primary()
    {
        skip_space();
        if (pos_ == text_.size()) error("unexpected end of expression");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            MultiPoly inner = expr();
            if (!accept(')')) error("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) digits.push_back(text_[pos_++]);
            return MultiPoly::constant(vars_, vars_->field().from_mpz(mpz_class(digits, 10)));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string id;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                id.push_back(text_[pos_++]);
            int idx = vars_->index_of(id);
            if (idx < 0) error("unknown identifier '" + id + "'");
            return MultiPoly::variable(vars_, static_cast<std::size_t>(idx));
        }
        error("unexpected '" + std::string(1, c) + "'");
    }

    VariableSet::Ptr vars_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

MultiPoly MultiPoly::parse(VariableSet::Ptr vars, std::string_view text) { return ExpressionParser(std::move(vars), text).parse(); }

RingElem parse_ring_element(const TestRing::Ptr& ring, std::string_view text)
{
    auto vars = VariableSet::make(ring->field(), ring->generators());
    MultiPoly p = MultiPoly::parse(vars, text);
    RingElem out = ring->zero();
    for (const auto& t : p.terms()) {
        auto idx = ring->index_of(t.exponents);
        if (idx) out += ring->basis_element(*idx).scale(t.coeff);
    }
    return out;
}

} // namespace arcmodel
