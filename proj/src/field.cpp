#include "arcmodel/field.hpp"

#include <cctype>
#include <string>

#include "arcmodel/errors.hpp"

namespace arcmodel {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::structural: return "StructuralError";
    case ErrorKind::parse: return "ParseError";
    case ErrorKind::not_a_unit: return "NotAUnit";
    case ErrorKind::not_monic: return "NotMonic";
    case ErrorKind::not_distinguished: return "NotDistinguished";
    case ErrorKind::residue_zero: return "ResidueZero";
    case ErrorKind::precision_exhausted: return "PrecisionExhausted";
    case ErrorKind::arc_not_on_variety: return "ArcNotOnVariety";
    case ErrorKind::arc_in_degeneracy_locus: return "ArcInDegeneracyLocus";
    case ErrorKind::obstructed_lift: return "ObstructedLift";
    case ErrorKind::inconsistent_input: return "InconsistentInput";
    case ErrorKind::not_enumerable: return "NotEnumerable";
    case ErrorKind::refused: return "Refused";
    }
    return "Error";
}

namespace {

bool is_prime(std::uint64_t p)
{
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::uint32_t reduce(const mpz_class& value, std::uint32_t p)
{
    mpz_class r = value % p;
    if (r < 0) r += p;
    return static_cast<std::uint32_t>(r.get_ui());
}

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint32_t p)
{
    std::uint64_t result = 1;
    base %= p;
    while (exp > 0) {
        if (exp & 1U) result = result * base % p;
        base = base * base % p;
        exp >>= 1U;
    }
    return static_cast<std::uint32_t>(result);
}

} // namespace

Field Field::prime(std::uint64_t p)
{
    require(p < (std::uint64_t{1} << 31U), ErrorKind::structural,
            "prime field modulus must be below 2^31, got " + std::to_string(p));
    require(is_prime(p), ErrorKind::structural, "field modulus " + std::to_string(p) + " is not prime");
    return Field(static_cast<std::uint32_t>(p));
}

Field Field::parse(std::string_view text)
{
    if (text == "Q") return rationals();
    if (text.size() >= 2 && text[0] == 'F') {
        std::uint64_t p = 0;
        for (char c : text.substr(1)) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                fail(ErrorKind::parse, "bad field '" + std::string(text) + "'");
            p = p * 10 + static_cast<std::uint64_t>(c - '0');
            if (p >= (std::uint64_t{1} << 32U)) fail(ErrorKind::structural, "field modulus too large");
        }
        return prime(p);
    }
    fail(ErrorKind::parse, "bad field '" + std::string(text) + "', expected Q or F<p>");
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long value) const { return from_mpz(mpz_class(value)); }

Scalar Field::from_mpz(const mpz_class& value) const
{
    if (is_rational()) return Scalar::rational(mpq_class(value));
    return Scalar::residue(reduce(value, modulus_), modulus_);
}

Scalar Field::from_fraction(const mpz_class& num, const mpz_class& den) const
{
    require(den != 0, ErrorKind::parse, "zero denominator");
    if (is_rational()) {
        mpq_class q(num, den);
        q.canonicalize();
        return Scalar::rational(q);
    }
    Scalar d = from_mpz(den);
    require(!d.is_zero(), ErrorKind::parse, "denominator divisible by the characteristic");
    return from_mpz(num) * d.inverse();
}

Scalar Field::parse_scalar(std::string_view text) const
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    require(!s.empty(), ErrorKind::parse, "empty scalar literal");
    auto slash = s.find('/');
    auto parse_int = [&](const std::string& part) {
        std::size_t start = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
        require(part.size() > start, ErrorKind::parse, "bad scalar literal '" + s + "'");
        for (std::size_t i = start; i < part.size(); ++i)
            require(std::isdigit(static_cast<unsigned char>(part[i])) != 0, ErrorKind::parse,
                    "bad scalar literal '" + s + "'");
        return mpz_class(part[0] == '+' ? part.substr(1) : part, 10);
    };
    if (slash == std::string::npos) return from_mpz(parse_int(s));
    return from_fraction(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
}

std::vector<Scalar> Field::elements() const
{
    require(is_finite(), ErrorKind::not_enumerable, "the rationals cannot be enumerated");
    std::vector<Scalar> out;
    out.reserve(modulus_);
    for (std::uint32_t v = 0; v < modulus_; ++v) out.push_back(Scalar::residue(v, modulus_));
    return out;
}

std::string Field::str() const { return is_rational() ? "Q" : "F" + std::to_string(modulus_); }

Scalar Scalar::rational(mpq_class value)
{
    Scalar s;
    s.modulus_ = 0;
    s.value_ = std::move(value);
    return s;
}

Scalar Scalar::residue(std::uint64_t value, std::uint32_t modulus)
{
    Scalar s;
    s.modulus_ = modulus;
    s.value_ = static_cast<std::uint32_t>(value % modulus);
    return s;
}

Field Scalar::field() const { return modulus_ == 0 ? Field::rationals() : Field::prime(modulus_); }

bool Scalar::is_zero() const
{
    if (modulus_ != 0) return std::get<std::uint32_t>(value_) == 0;
    return sgn(std::get<mpq_class>(value_)) == 0;
}

bool Scalar::is_one() const
{
    if (modulus_ != 0) return std::get<std::uint32_t>(value_) == 1;
    return std::get<mpq_class>(value_) == 1;
}

void Scalar::check_compatible(const Scalar& other) const
{
    if (modulus_ != other.modulus_)
        fail(ErrorKind::structural, "scalars from different fields (F" + std::to_string(modulus_) + " vs F" +
                                        std::to_string(other.modulus_) + ")");
}

Scalar Scalar::operator+(const Scalar& other) const
{
    check_compatible(other);
    if (modulus_ != 0) {
        std::uint64_t v = std::uint64_t{residue_value()} + other.residue_value();
        return residue(v, modulus_);
    }
    return rational(rational_value() + other.rational_value());
}

Scalar& Scalar::operator+=(const Scalar& other)
{
    check_compatible(other);
    if (modulus_ != 0) {
        std::uint64_t v = std::uint64_t{residue_value()} + other.residue_value();
        std::get<std::uint32_t>(value_) = static_cast<std::uint32_t>(v % modulus_);
    } else {
        std::get<mpq_class>(value_) += other.rational_value();
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& other)
{
    check_compatible(other);
    if (modulus_ != 0) {
        std::uint64_t v = std::uint64_t{residue_value()} + modulus_ - other.residue_value();
        std::get<std::uint32_t>(value_) = static_cast<std::uint32_t>(v % modulus_);
    } else {
        std::get<mpq_class>(value_) -= other.rational_value();
    }
    return *this;
}

void Scalar::add_mul(const Scalar& a, const Scalar& b)
{
    check_compatible(a);
    check_compatible(b);
    if (modulus_ != 0) {
        std::uint64_t v = std::uint64_t{a.residue_value()} * b.residue_value() % modulus_ + residue_value();
        std::get<std::uint32_t>(value_) = static_cast<std::uint32_t>(v % modulus_);
        return;
    }
    auto& mine = std::get<mpq_class>(value_);
    const auto& x = a.rational_value();
    const auto& y = b.rational_value();
    // Integral products are common; skip the gcd work of a general rational product.
    if (mpz_cmp_ui(x.get_den_mpz_t(), 1) == 0 && mpz_cmp_ui(y.get_den_mpz_t(), 1) == 0 &&
        mpz_cmp_ui(mine.get_den_mpz_t(), 1) == 0) {
        mpz_addmul(mine.get_num_mpz_t(), x.get_num_mpz_t(), y.get_num_mpz_t());
        return;
    }
    mine += x * y;
}

Scalar Scalar::operator-(const Scalar& other) const
{
    check_compatible(other);
    if (modulus_ != 0) {
        std::uint64_t v = std::uint64_t{residue_value()} + modulus_ - other.residue_value();
        return residue(v, modulus_);
    }
    return rational(rational_value() - other.rational_value());
}

Scalar Scalar::operator*(const Scalar& other) const
{
    check_compatible(other);
    if (modulus_ != 0) return residue(std::uint64_t{residue_value()} * other.residue_value(), modulus_);
    return rational(rational_value() * other.rational_value());
}

Scalar Scalar::operator-() const
{
    if (modulus_ != 0) return residue(modulus_ - residue_value(), modulus_);
    return rational(-rational_value());
}

Scalar Scalar::inverse() const
{
    if (is_zero()) fail(ErrorKind::not_a_unit, "zero has no inverse in k");
    if (modulus_ != 0) return residue(pow_mod(residue_value(), modulus_ - 2, modulus_), modulus_);
    return rational(1 / rational_value());
}

Scalar Scalar::zero_like() const { return modulus_ == 0 ? rational(0) : residue(0, modulus_); }
Scalar Scalar::one_like() const { return modulus_ == 0 ? rational(1) : residue(1, modulus_); }

std::string Scalar::str() const
{
    if (modulus_ != 0) return std::to_string(residue_value());
    return rational_value().get_str();
}

bool Scalar::is_negative_literal() const { return modulus_ == 0 && sgn(rational_value()) < 0; }

bool operator==(const Scalar& a, const Scalar& b)
{
    if (a.modulus_ != b.modulus_) return false;
    if (a.modulus_ != 0) return a.residue_value() == b.residue_value();
    return a.rational_value() == b.rational_value();
}

} // namespace arcmodel
