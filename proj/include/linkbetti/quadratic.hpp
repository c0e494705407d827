#pragma once

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

#include "linkbetti/rational.hpp"

namespace linkbetti {

// Exact number a + b*sqrt(s) with rational a, b and radicand s >= 0.
//
// Canonical form: if s is the square of a rational, or b == 0, or s == 0,
// the irrational part is folded into a and the value is stored with
// b = s = 0. Two scalars can be combined only when they share a radicand or
// at least one of them is purely rational; anything else raises DomainError
// (mixed quadratic extensions are not supported).
class QuadraticScalar {
public:
    QuadraticScalar() = default;
    QuadraticScalar(Rational a);  // NOLINT(google-explicit-constructor)
    QuadraticScalar(long long a) : QuadraticScalar(Rational(a)) {}  // NOLINT(google-explicit-constructor)
    QuadraticScalar(Rational a, Rational b, Rational s);

    static QuadraticScalar sqrt(const Rational& s) { return {Rational(0), Rational(1), s}; }

    // Rational literal, "sqrt(<rational>)" or "sqrt:<rational>".
    static QuadraticScalar parse(std::string_view text);

    const Rational& rational_part() const { return a_; }
    const Rational& irrational_coefficient() const { return b_; }
    const Rational& radicand() const { return s_; }
    bool is_rational() const { return b_.is_zero(); }

    // Sign of a + b*sqrt(s), decided exactly.
    int sign() const;
    double to_double() const;

    // Largest integer <= value.
    BigInt floor() const;

    // "a" for rationals, "sqrt(s)" for a pure root, "a+b*sqrt(s)" otherwise.
    std::string to_string() const;

    QuadraticScalar& operator+=(const QuadraticScalar& rhs);
    QuadraticScalar& operator-=(const QuadraticScalar& rhs);
    QuadraticScalar& operator*=(const Rational& k);

    friend QuadraticScalar operator+(QuadraticScalar x, const QuadraticScalar& y) { return x += y; }
    friend QuadraticScalar operator-(QuadraticScalar x, const QuadraticScalar& y) { return x -= y; }
    friend QuadraticScalar operator*(QuadraticScalar x, const Rational& k) { return x *= k; }
    friend QuadraticScalar operator*(const Rational& k, QuadraticScalar x) { return x *= k; }
    QuadraticScalar operator-() const;

    friend bool operator==(const QuadraticScalar& x, const QuadraticScalar& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.s_ == y.s_;
    }
    friend std::strong_ordering operator<=>(const QuadraticScalar& x, const QuadraticScalar& y);

private:
    void normalize();
    const Rational& common_radicand(const QuadraticScalar& other) const;

    Rational a_;
    Rational b_;
    Rational s_;
};

int qs_sign(const QuadraticScalar& x);
// Throws DomainError when the radicands are incompatible.
std::strong_ordering qs_compare(const QuadraticScalar& x, const QuadraticScalar& y);

std::ostream& operator<<(std::ostream& os, const QuadraticScalar& x);

}  // namespace linkbetti
