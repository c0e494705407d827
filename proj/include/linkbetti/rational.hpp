#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace linkbetti {

using BigInt = mpz_class;

// Exact rational number in lowest terms with a positive denominator.
// Thin value wrapper over GMP's mpq_class; canonicalization happens on every
// construction so equality is structural.
class Rational {
public:
    Rational() = default;
    Rational(long long value);  // NOLINT(google-explicit-constructor)
    Rational(const BigInt& numerator, const BigInt& denominator);
    explicit Rational(const mpq_class& value);

    // Accepts "p/q", an integer, or a finite decimal ("0.125", "-3.5e-2").
    // Decimal strings denote exact rationals; no binary floating point is
    // involved.
    static Rational parse(std::string_view text);

    const BigInt& numerator() const { return value_.get_num(); }
    const BigInt& denominator() const { return value_.get_den(); }
    const mpq_class& get() const { return value_; }

    int sign() const { return sgn(value_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return value_.get_den() == 1; }

    Rational abs() const;
    BigInt floor() const;
    BigInt ceil() const;

    // Exact square root when this is the square of a rational.
    std::optional<Rational> exact_sqrt() const;

    double to_double() const { return value_.get_d(); }

    // "p" for integers, "p/q" otherwise.
    std::string to_string() const;
    // Fixed-point rendering rounded half away from zero.
    std::string to_decimal(int digits) const;

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    Rational operator-() const;

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Decimal rendering of an arbitrary precision integer.
std::string to_string(const BigInt& value);

// Natural logarithm of a positive big integer, accurate to double precision
// even when the value overflows a double.
double log_big(const BigInt& value);

}  // namespace linkbetti
