#include "linkbetti/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

#include "linkbetti/errors.hpp"

namespace linkbetti {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) {
        throw ParseError("malformed rational literal '" + std::string(whole) + "'");
    }
    BigInt value(std::string(s), 10);
    return negative ? BigInt(-value) : value;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        const BigInt exp_value = parse_integer(s.substr(e + 1), whole);
        if (!exp_value.fits_slong_p() || abs(exp_value) > 4096) {
            throw ParseError("exponent out of range in '" + std::string(whole) + "'");
        }
        exponent = exp_value.get_si();
        s = s.substr(0, e);
    }
    std::string digits;
    long fraction_digits = 0;
    if (const auto dot = s.find('.'); dot != std::string_view::npos) {
        const auto int_part = s.substr(0, dot);
        const auto frac_part = s.substr(dot + 1);
        if ((int_part.empty() && frac_part.empty()) ||
            (!int_part.empty() && !all_digits(int_part)) ||
            (!frac_part.empty() && !all_digits(frac_part))) {
            throw ParseError("malformed decimal literal '" + std::string(whole) + "'");
        }
        digits = std::string(int_part) + std::string(frac_part);
        fraction_digits = static_cast<long>(frac_part.size());
    } else {
        if (!all_digits(s)) {
            throw ParseError("malformed decimal literal '" + std::string(whole) + "'");
        }
        digits = std::string(s);
    }
    BigInt mantissa(digits, 10);
    if (negative) mantissa = -mantissa;
    const long shift = exponent - fraction_digits;
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
    return shift >= 0 ? Rational(mantissa * scale, 1) : Rational(mantissa, scale);
}

}  // namespace

Rational::Rational(long long value) : value_(static_cast<signed long>(value)) {
    static_assert(sizeof(long) == sizeof(long long), "LP64 data model expected");
}

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
    if (denominator == 0) throw DomainError("rational with zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

Rational::Rational(const mpq_class& value) : value_(value) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw ParseError("empty rational literal");

    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const BigInt num = parse_integer(text.substr(0, slash), text);
        const BigInt den = parse_integer(text.substr(slash + 1), text);
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }
    return parse_decimal(text, text);
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

BigInt Rational::floor() const {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), numerator().get_mpz_t(), denominator().get_mpz_t());
    return q;
}

BigInt Rational::ceil() const {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), numerator().get_mpz_t(), denominator().get_mpz_t());
    return q;
}

std::optional<Rational> Rational::exact_sqrt() const {
    if (sign() < 0) return std::nullopt;
    if (mpz_perfect_square_p(numerator().get_mpz_t()) == 0 ||
        mpz_perfect_square_p(denominator().get_mpz_t()) == 0) {
        return std::nullopt;
    }
    return Rational(BigInt(sqrt(numerator())), BigInt(sqrt(denominator())));
}

std::string Rational::to_string() const {
    if (is_integer()) return numerator().get_str(10);
    return numerator().get_str(10) + "/" + denominator().get_str(10);
}

std::string Rational::to_decimal(int digits) const {
    if (digits < 0) digits = 0;
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    // round(|x| * 10^digits), half away from zero
    const mpq_class scaled = mpq_class(::abs(value_) * scale);
    BigInt twice = 2 * scaled.get_num() + scaled.get_den();
    BigInt rounded;
    mpz_fdiv_q(rounded.get_mpz_t(), twice.get_mpz_t(), BigInt(2 * scaled.get_den()).get_mpz_t());
    std::string body = rounded.get_str(10);
    if (digits > 0) {
        if (body.size() <= static_cast<size_t>(digits)) {
            body.insert(0, static_cast<size_t>(digits) + 1 - body.size(), '0');
        }
        body.insert(body.size() - static_cast<size_t>(digits), 1, '.');
    }
    const bool negative = sign() < 0 && rounded != 0;
    return negative ? "-" + body : body;
}

Rational& Rational::operator+=(const Rational& rhs) {
    value_ += rhs.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    value_ -= rhs.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    value_ *= rhs.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw DomainError("division by zero");
    value_ /= rhs.value_;
    return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

std::string to_string(const BigInt& value) { return value.get_str(10); }

double log_big(const BigInt& value) {
    if (value <= 0) throw DomainError("logarithm of a non-positive integer");
    long exponent = 0;
    const double mantissa = mpz_get_d_2exp(&exponent, value.get_mpz_t());
    return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

}  // namespace linkbetti
