#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace arcmodel {

class Scalar;

/// The base field k: either the rationals or a prime field F_p with p < 2^31.
class Field {
public:
    static Field rationals() { return Field(0); }
    /// Throws a structural error unless p is a prime below 2^31.
    static Field prime(std::uint64_t p);
    /// Parses "Q" or "F<p>".
    static Field parse(std::string_view text);

    bool is_rational() const noexcept { return modulus_ == 0; }
    bool is_finite() const noexcept { return modulus_ != 0; }
    std::uint32_t modulus() const noexcept { return modulus_; }
    std::uint32_t characteristic() const noexcept { return modulus_; }

    Scalar zero() const;
    Scalar one() const;
    Scalar from_int(long value) const;
    Scalar from_mpz(const mpz_class& value) const;
    /// num/den; the denominator must be invertible in the field.
    Scalar from_fraction(const mpz_class& num, const mpz_class& den) const;
    /// Parses an integer or a fraction "a/b" with optional sign.
    Scalar parse_scalar(std::string_view text) const;

    /// Elements of a finite field in the order 0, 1, ..., p-1.
    std::vector<Scalar> elements() const;

    std::string str() const;

    friend bool operator==(const Field& a, const Field& b) noexcept { return a.modulus_ == b.modulus_; }

private:
    explicit Field(std::uint32_t modulus) : modulus_(modulus) {}
    std::uint32_t modulus_;
};

/// An exact element of k. Residues mod p are stored reduced into [0, p).
class Scalar {
public:
    /// Rational zero.
    Scalar() = default;

    static Scalar rational(mpq_class value);
    static Scalar residue(std::uint64_t value, std::uint32_t modulus);

    std::uint32_t modulus() const noexcept { return modulus_; }
    Field field() const;

    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& other) const;
    Scalar operator-(const Scalar& other) const;
    Scalar operator*(const Scalar& other) const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& other);
    Scalar& operator-=(const Scalar& other);
    Scalar& operator*=(const Scalar& other) { return *this = *this * other; }
    /// *this += a * b without temporaries.
    void add_mul(const Scalar& a, const Scalar& b);

    /// Throws ErrorKind::not_a_unit on zero.
    Scalar inverse() const;

    Scalar zero_like() const;
    Scalar one_like() const;
    Scalar scale(const Scalar& s) const { return *this * s; }

    /// For F_p the canonical representative; for Q, "a" or "a/b".
    std::string str() const;
    /// True when str() starts with '-'.
    bool is_negative_literal() const;

    /// Residue value for F_p scalars.
    std::uint32_t residue_value() const { return std::get<std::uint32_t>(value_); }
    const mpq_class& rational_value() const { return std::get<mpq_class>(value_); }

    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

private:
    void check_compatible(const Scalar& other) const;

    std::uint32_t modulus_ = 0;
    std::variant<mpq_class, std::uint32_t> value_;
};

} // namespace arcmodel
