#include "linkbetti/quadratic.hpp"

#include <cmath>
#include <ostream>

#include "linkbetti/errors.hpp"

namespace linkbetti {

QuadraticScalar::QuadraticScalar(Rational a) : a_(std::move(a)) {}

QuadraticScalar::QuadraticScalar(Rational a, Rational b, Rational s)
    : a_(std::move(a)), b_(std::move(b)), s_(std::move(s)) {
    if (s_.sign() < 0) throw DomainError("negative radicand " + s_.to_string());
    normalize();
}

void QuadraticScalar::normalize() {
    if (b_.is_zero() || s_.is_zero()) {
        b_ = Rational(0);
        s_ = Rational(0);
        return;
    }
    if (auto root = s_.exact_sqrt()) {
        a_ += b_ * *root;
        b_ = Rational(0);
        s_ = Rational(0);
    }
}

QuadraticScalar QuadraticScalar::parse(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text.starts_with("sqrt(")) {
        if (!text.ends_with(")")) throw ParseError("unterminated sqrt literal '" + std::string(text) + "'");
        return sqrt(Rational::parse(text.substr(5, text.size() - 6)));
    }
    if (text.starts_with("sqrt:")) return sqrt(Rational::parse(text.substr(5)));
    return QuadraticScalar(Rational::parse(text));
}

const Rational& QuadraticScalar::common_radicand(const QuadraticScalar& other) const {
    if (is_rational()) return other.s_;
    if (other.is_rational() || other.s_ == s_) return s_;
    throw DomainError("mixed quadratic extensions sqrt(" + s_.to_string() + ") and sqrt(" +
                      other.s_.to_string() + ") are not supported");
}

int QuadraticScalar::sign() const {
    const int sa = a_.sign();
    const int sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // opposite signs: compare a^2 with b^2 s
    const Rational lhs = a_ * a_;
    const Rational rhs = b_ * b_ * s_;
    if (lhs > rhs) return sa;
    if (lhs < rhs) return sb;
    return 0;
}

double QuadraticScalar::to_double() const {
    if (is_rational()) return a_.to_double();
    const double root_term = b_.to_double() * std::sqrt(s_.to_double());
    if (a_.sign() * b_.sign() >= 0) return a_.to_double() + root_term;
    // a - |b|sqrt(s) loses digits near zero; use (a^2 - b^2 s) / (a - b sqrt(s))
    const Rational numerator = a_ * a_ - b_ * b_ * s_;
    return numerator.to_double() / (a_.to_double() - root_term);
}

BigInt QuadraticScalar::floor() const {
    if (is_rational()) return a_.floor();
    // Estimate with enough precision to land within a step or two, then
    // settle exactly.
    const double approx = to_double();
    BigInt guess;
    if (std::isfinite(approx) && std::fabs(approx) < 1e15) {
        guess = BigInt(static_cast<long>(std::floor(approx)));
    } else {
        const mp_bitcnt_t bits = 128 + mpz_sizeinbase(a_.numerator().get_mpz_t(), 2) +
                                 mpz_sizeinbase(b_.numerator().get_mpz_t(), 2) +
                                 mpz_sizeinbase(s_.numerator().get_mpz_t(), 2);
        mpf_class s(s_.get(), bits);
        mpf_class t(a_.get(), bits);
        t += mpf_class(b_.get(), bits) * mpf_class(::sqrt(s), bits);
        mpf_class f(0, bits);
        mpf_floor(f.get_mpf_t(), t.get_mpf_t());
        guess = BigInt(f);
    }
    while ((*this - QuadraticScalar(Rational(guess, 1))).sign() < 0) guess -= 1;
    while ((*this - QuadraticScalar(Rational(BigInt(guess + 1), 1))).sign() >= 0) guess += 1;
    return guess;
}

std::string QuadraticScalar::to_string() const {
    if (is_rational()) return a_.to_string();
    std::string root = "sqrt(" + s_.to_string() + ")";
    std::string irr;
    if (b_ == Rational(1)) {
        irr = root;
    } else if (b_ == Rational(-1)) {
        irr = "-" + root;
    } else {
        irr = b_.to_string() + "*" + root;
    }
    if (a_.is_zero()) return irr;
    return a_.to_string() + (b_.sign() > 0 ? "+" : "") + irr;
}

QuadraticScalar& QuadraticScalar::operator+=(const QuadraticScalar& rhs) {
    const Rational s = common_radicand(rhs);
    a_ += rhs.a_;
    b_ += rhs.b_;
    s_ = s;
    normalize();
    return *this;
}

QuadraticScalar& QuadraticScalar::operator-=(const QuadraticScalar& rhs) { return *this += -rhs; }

QuadraticScalar& QuadraticScalar::operator*=(const Rational& k) {
    a_ *= k;
    b_ *= k;
    normalize();
    return *this;
}

QuadraticScalar QuadraticScalar::operator-() const {
    QuadraticScalar out = *this;
    out.a_ = -a_;
    out.b_ = -b_;
    return out;
}

std::strong_ordering operator<=>(const QuadraticScalar& x, const QuadraticScalar& y) {
    const int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

int qs_sign(const QuadraticScalar& x) { return x.sign(); }

std::strong_ordering qs_compare(const QuadraticScalar& x, const QuadraticScalar& y) { return x <=> y; }

std::ostream& operator<<(std::ostream& os, const QuadraticScalar& x) { return os << x.to_string(); }

}  // namespace linkbetti
