#include <doctest.h>

#include <random>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "linkbetti/errors.hpp"
#include "linkbetti/quadratic.hpp"

using namespace linkbetti;
using Decimal200 = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<200>>;

namespace {

Rational q(long num, long den = 1) {
    return {BigInt(num), BigInt(den)};
}

Decimal200 to_dec(const Rational& x) {
    return Decimal200(x.numerator().get_str()) / Decimal200(x.denominator().get_str());
}

int decimal_sign(const QuadraticScalar& x) {
    const Decimal200 value = to_dec(x.rational_part()) + to_dec(x.irrational_coefficient()) * sqrt(to_dec(x.radicand()));
    return value > 0 ? 1 : (value < 0 ? -1 : 0);
}

}  // namespace

TEST_CASE("rational literals are exact and canonical") {
    CHECK(Rational::parse("6/8") == q(3, 4));
    CHECK(Rational::parse("-6/-8") == q(3, 4));
    CHECK(Rational::parse("0.5") == q(1, 2));
    CHECK(Rational::parse("0.1") == q(1, 10));
    CHECK(Rational::parse("-3.5e-2") == q(-7, 200));
    CHECK(Rational::parse("12") == q(12));
    CHECK(Rational::parse(" 2.50 ") == q(5, 2));
    CHECK(Rational::parse("1e3") == q(1000));
    CHECK(q(4, -6).denominator() == 3);
    CHECK(q(4, -6).numerator() == -2);
    CHECK(q(3, 4).to_string() == "3/4");
    CHECK(q(-8, 4).to_string() == "-2");
}

TEST_CASE("malformed rational literals are rejected") {
    for (const char* bad : {"", "1/0", "abc", "1/2/3", "1..2", ".", "1e", "1e99999", "--1", "0x10", "1/2.5"}) {
        CAPTURE(bad);
        CHECK_THROWS((void)Rational::parse(bad));
    }
    CHECK_THROWS_AS((void)Rational::parse("1/0"), ParseError);
    CHECK_THROWS_AS((void)Rational::parse("x"), ParseError);
}

TEST_CASE("rational floor, ceil and decimal rendering") {
    CHECK(q(7, 2).floor() == 3);
    CHECK(q(-7, 2).floor() == -4);
    CHECK(q(-7, 2).ceil() == -3);
    CHECK(q(6).floor() == 6);
    CHECK(q(1, 3).to_decimal(4) == "0.3333");
    CHECK(q(2, 3).to_decimal(4) == "0.6667");
    CHECK(q(-1, 8).to_decimal(2) == "-0.13");
    CHECK(q(5).to_decimal(0) == "5");
    CHECK(q(9, 4).exact_sqrt() == q(3, 2));
    CHECK_FALSE(q(2).exact_sqrt().has_value());
}

TEST_CASE("qs_sign examples") {
    CHECK(qs_sign(QuadraticScalar(q(0), q(0), q(2))) == 0);
    CHECK(qs_sign(QuadraticScalar(q(-1), q(1), q(2))) == 1);
    CHECK(qs_sign(QuadraticScalar(q(3), q(-2), q(2))) == 1);
    CHECK(qs_sign(QuadraticScalar(q(-3), q(2), q(2))) == -1);
    CHECK(qs_sign(QuadraticScalar(q(1), q(-1), q(2))) == -1);
    CHECK(qs_sign(QuadraticScalar(q(2), q(-1), q(4))) == 0);
}

TEST_CASE("qs_compare examples and normalization") {
    CHECK(qs_compare(QuadraticScalar(1), QuadraticScalar(1)) == std::strong_ordering::equal);
    const QuadraticScalar root4 = QuadraticScalar::sqrt(4);
    CHECK(root4.is_rational());
    CHECK(qs_compare(root4, QuadraticScalar(2)) == std::strong_ordering::equal);
    // h = 2 against r = sqrt(2v + h^2) at v = 0
    CHECK(QuadraticScalar::sqrt(q(2) * q(0) + q(4)) == QuadraticScalar(2));
    CHECK(QuadraticScalar::sqrt(q(9, 4)) == QuadraticScalar(q(3, 2)));
    CHECK(QuadraticScalar::sqrt(2) > QuadraticScalar(q(141, 100)));
    CHECK(QuadraticScalar::sqrt(2) < QuadraticScalar(q(1415, 1000) ));
}

TEST_CASE("mixed radicands and negative radicands are errors") {
    CHECK_THROWS_AS((void)(QuadraticScalar::sqrt(2) + QuadraticScalar::sqrt(3)), DomainError);
    CHECK_THROWS_AS((void)qs_compare(QuadraticScalar::sqrt(2), QuadraticScalar::sqrt(3)), DomainError);
    CHECK_THROWS_AS(QuadraticScalar(q(0), q(1), q(-2)), DomainError);
    CHECK_NOTHROW((void)(QuadraticScalar::sqrt(2) + QuadraticScalar(q(1, 3))));
    // sqrt(8) = 2 sqrt(2) is a different radicand representation and is rejected, not silently merged
    CHECK_THROWS_AS((void)(QuadraticScalar::sqrt(2) + QuadraticScalar::sqrt(8)), DomainError);
}

TEST_CASE("quadratic literals") {
    CHECK(QuadraticScalar::parse("sqrt(2)") == QuadraticScalar::sqrt(2));
    CHECK(QuadraticScalar::parse("sqrt:1/2") == QuadraticScalar::sqrt(q(1, 2)));
    CHECK(QuadraticScalar::parse("3/4") == QuadraticScalar(q(3, 4)));
    CHECK(QuadraticScalar::parse("sqrt(16/9)") == QuadraticScalar(q(4, 3)));
    CHECK_THROWS_AS((void)QuadraticScalar::parse("sqrt(2"), ParseError);
    CHECK(QuadraticScalar(q(1), q(-1, 2), q(3)).to_string() == "1-1/2*sqrt(3)");
    CHECK(QuadraticScalar::sqrt(5).to_string() == "sqrt(5)");
}

TEST_CASE("floor in the quadratic field") {
    CHECK(QuadraticScalar::sqrt(2).floor() == 1);
    CHECK((-QuadraticScalar::sqrt(2)).floor() == -2);
    CHECK(QuadraticScalar(q(1), q(1), q(2)).floor() == 2);
    // 10^6 sqrt(2) just below an integer boundary stays exact
    CHECK((QuadraticScalar::sqrt(2) * q(1000000)).floor() == 1414213);
    const QuadraticScalar big = QuadraticScalar::sqrt(q(2)) * Rational(BigInt("100000000000000000000000000000"), BigInt(1));
    CHECK(big.floor() == BigInt("141421356237309504880168872420"));
}

TEST_CASE("qs_sign agrees with 200-digit evaluation on random inputs") {
    std::mt19937_64 rng(7);
    auto draw = [&](long range) { return static_cast<long>(rng() % static_cast<std::uint64_t>(2 * range + 1)) - range; };
    int checked = 0;
    for (int i = 0; i < 10000; ++i) {
        const Rational s = q(1 + static_cast<long>(rng() % 50), 1 + static_cast<long>(rng() % 7));
        // near-cancelling a and b drawn from a rational approximation of sqrt(s)
        Rational a = q(draw(1000), 1 + static_cast<long>(rng() % 97));
        const Rational b = q(draw(1000), 1 + static_cast<long>(rng() % 97));
        if (i % 2 == 0) a = -b * Rational(BigInt(static_cast<long>(std::llround(std::sqrt(s.to_double()) * 1e6))), BigInt(1000000)) + q(draw(3), 1000000000);
        const QuadraticScalar x(a, b, s);
        CAPTURE(x.to_string());
        CHECK(qs_sign(x) == decimal_sign(x));
        ++checked;
    }
    CHECK(checked == 10000);
}

TEST_CASE("qs_compare is a total order and arithmetic is exact") {
    std::mt19937_64 rng(11);
    auto r = [&] { return q(static_cast<long>(rng() % 2001) - 1000, 1 + static_cast<long>(rng() % 50)); };
    const Rational s = q(3);
    for (int i = 0; i < 2000; ++i) {
        const QuadraticScalar x(r(), r(), s);
        const QuadraticScalar y(r(), r(), s);
        const QuadraticScalar z(r(), r(), s);
        const auto xy = qs_compare(x, y);
        const auto yx = qs_compare(y, x);
        CHECK((xy == std::strong_ordering::less) == (yx == std::strong_ordering::greater));
        CHECK((xy == std::strong_ordering::equal) == (x == y));
        if (x <= y && y <= z) CHECK(x <= z);
        CHECK((x + y) - y == x);
        CHECK((x - z) + z == x);
        const Rational k = r();
        if (!k.is_zero()) CHECK((x * k) * (Rational(1) / k) == x);
    }
}
