#include <doctest.h>

#include <random>

#include "linkbetti/betti.hpp"
#include "linkbetti/errors.hpp"
#include "linkbetti/xy_model.hpp"

using namespace linkbetti;

namespace {

Rational q(long num, long den = 1) {
    return {BigInt(num), BigInt(den)};
}

std::vector<BigInt> big(std::initializer_list<long> values) {
    std::vector<BigInt> out;
    for (long v : values) out.emplace_back(v);
    return out;
}

BigInt binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

}  // namespace

TEST_CASE("profile examples") {
    const auto a = betti_profile(LengthVector::parse("1,1,1,2"));
    CHECK(a.b == big({1, 2, 0}));
    CHECK(a.total == 3);
    CHECK(a.euler == -1);
    CHECK(a.euler_sign() == -1);
    CHECK(a.euler_abs() == 1);
    CHECK(a.dimension() == 2);
    CHECK(a.disconnected == false);

    const auto b = betti_profile(LengthVector::parse("1,1,1,1/2"));
    CHECK(b.b == big({2, 0, 0}));
    CHECK(b.total == 2);
    CHECK(b.euler == 2);
    CHECK(b.disconnected == true);

    const auto c = betti_profile(LengthVector::parse("1,1,5,5,5,1/2"));
    CHECK(c.b == big({2, 4, 2, 0, 0}));
    CHECK(c.disconnected == true);

    const auto xy4 = xy::xy_betti_profile({4, 2, 0});
    CHECK(xy4.b == big({1, 4, 6, 0, 0}));
    CHECK(xy4.total == 11);
    CHECK(xy4.euler == 3);
    CHECK_FALSE(xy4.generic);
}

TEST_CASE("profile from counts uses the dual index") {
    SubsetCounts counts;
    counts.n = 5;
    counts.c = big({1, 2, 3, 4});
    counts.d = big({0, 10, 20, 30});
    const auto p = betti_profile(counts, 5);
    // b_k = c_k + d_{2-k}
    CHECK(p.b == big({21, 12, 3, 4}));
    CHECK(p.total == 40);
    CHECK(p.euler == 21 - 12 + 3 - 4);
    CHECK_THROWS_AS((void)betti_profile(counts, 6), DomainError);
}

TEST_CASE("connectivity examples") {
    CHECK(is_disconnected(LengthVector::parse("1,1,1,1/2")).disconnected);
    CHECK(is_disconnected(LengthVector::parse("1,1,1,1/2")).components == 2);
    CHECK_FALSE(is_disconnected(LengthVector::parse("1,1,1,2")).disconnected);
    CHECK(is_disconnected(LengthVector::parse("5,1,5,1,5,1/2")).disconnected);
    CHECK_THROWS_AS((void)is_disconnected(LengthVector::parse("1,1,1")), DomainError);
    const auto tri = betti_profile(LengthVector::parse("1,1,1/2"));
    CHECK_FALSE(tri.disconnected.has_value());
}

TEST_CASE("small telescopic legs leave the profile unchanged") {
    auto qs = [](std::initializer_list<long> xs) {
        std::vector<QuadraticScalar> out;
        for (long x : xs) out.emplace_back(x);
        return out;
    };
    CHECK(small_leg_stability(qs({1, 2, 4}), {QuadraticScalar(q(1, 2)), QuadraticScalar(q(1, 4)), QuadraticScalar(q(1, 8))}));
    CHECK_THROWS_AS((void)small_leg_stability(qs({1, 2, 4}), {QuadraticScalar(q(1, 2)), QuadraticScalar(q(3, 2))}),
                    DomainError);
    CHECK(small_leg_stability(qs({1, 1, 1}), {QuadraticScalar(q(1, 2)), QuadraticScalar(q(1, 4))}));
    CHECK_THROWS_AS((void)small_leg_stability(qs({1, 2, 3}), {QuadraticScalar(q(1, 8))}), DomainError);
    CHECK(small_leg_stability(qs({3, 4, 6, 8}), {QuadraticScalar(q(1, 2)), QuadraticScalar::sqrt(q(1, 8))}));
}

TEST_CASE("Betti properties on random generic vectors") {
    std::mt19937_64 rng(23);
    int disconnected = 0;
    int checked = 0;
    while (checked < 300) {
        const std::size_t n = 4 + rng() % 13;
        std::vector<Rational> legs;
        const bool three_big = checked % 3 == 0;
        for (std::size_t i = 0; i < n; ++i) {
            const long top = three_big && i < 3 ? 60 : (three_big ? 6 : 30);
            legs.push_back(q(1 + static_cast<long>(rng() % static_cast<std::uint64_t>(top)), 1 + static_cast<long>(rng() % 4)));
        }
        const auto l = LengthVector::of(legs);
        if (!is_generic(l)) continue;
        const auto p = betti_profile(l);
        // empty shape space: longest fixed leg is long
        if (p.total == 0) continue;
        ++checked;
        CAPTURE(l.to_string());
        CHECK((p.b[0] == 1 || p.b[0] == 2));
        CHECK(*p.disconnected == (p.b[0] == 2));
        BigInt euler = 0;
        BigInt total = 0;
        for (std::size_t k = p.b.size(); k-- > 0;) {
            CHECK(p.b[k] >= 0);
            total += p.b[k];
            euler += (k % 2 == 0 ? 1 : -1) * p.b[k];
        }
        CHECK(euler == p.euler);
        CHECK(total == p.total);
        const auto counts = count_ckdk(l);
        CHECK(p.total == counts.c_total() + counts.d_total());
        if (*p.disconnected) {
            ++disconnected;
            for (std::size_t k = 0; k < p.b.size(); ++k) CHECK(p.b[k] == 2 * binomial(static_cast<long>(n) - 4, static_cast<long>(k)));
        }
    }
    CHECK(disconnected > 10);
}
