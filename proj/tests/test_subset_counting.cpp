#include <doctest.h>

#include <algorithm>
#include <random>

#include "linkbetti/errors.hpp"
#include "linkbetti/oracle.hpp"
#include "linkbetti/subset_counting.hpp"

using namespace linkbetti;

namespace {

Rational q(long num, long den = 1) {
    return {BigInt(num), BigInt(den)};
}

LengthVector vec(const char* text) {
    return LengthVector::parse(text);
}

std::vector<BigInt> big(std::initializer_list<long> values) {
    std::vector<BigInt> out;
    for (long v : values) out.emplace_back(v);
    return out;
}

BigInt binomial(unsigned long n, unsigned long k) {
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

// Counts straight from the subset table, relative to a given pivot.
SubsetCounts counts_from_table(const LengthVector& lengths, std::size_t pivot) {
    const std::size_t n = lengths.size();
    SubsetCounts out;
    out.n = n;
    out.pivot = pivot;
    out.c.assign(n - 1, BigInt(0));
    out.d.assign(n - 1, BigInt(0));
    const SubsetMask tel = SubsetMask{1} << (n - 1);
    oracle::for_each_subset(lengths, [&](const oracle::SubsetRow& row) {
        if (row.cls == SubsetClass::Median) out.generic = false;
        if (!(row.mask & (SubsetMask{1} << pivot))) return;
        const auto k = static_cast<std::size_t>(std::popcount(row.mask)) - 1;
        if (!(row.mask & tel) && row.cls != SubsetClass::Long) out.c[k] += 1;
        if ((row.mask & tel) && row.cls == SubsetClass::Short && k > 0) out.d[k] += 1;
    });
    return out;
}

LengthVector random_rational(std::mt19937_64& rng, std::size_t n, long max_num, long max_den) {
    std::vector<Rational> legs;
    for (std::size_t i = 0; i < n; ++i) {
        legs.push_back(q(1 + static_cast<long>(rng() % static_cast<std::uint64_t>(max_num)),
                         1 + static_cast<long>(rng() % static_cast<std::uint64_t>(max_den))));
    }
    return LengthVector::of(legs);
}

}  // namespace

TEST_CASE("length vectors") {
    const auto l = vec("1, 2, 0.5, sqrt(2)");
    CHECK(l.size() == 4);
    CHECK(l.telescopic() == QuadraticScalar::sqrt(2));
    CHECK(l[2] == QuadraticScalar(q(1, 2)));
    CHECK_FALSE(l.is_rational());
    CHECK(l.radicand() == q(2));
    CHECK(l.to_string() == "1,2,1/2,sqrt(2)");
    CHECK(vec("3,1,2,5").canonical() == vec("1,2,3,5"));
    CHECK_THROWS_AS(vec("1,2"), DomainError);
    CHECK_THROWS_AS(vec("1,0,2"), DomainError);
    CHECK_THROWS_AS(vec("1,-1,2"), DomainError);
    CHECK_THROWS_AS(vec("sqrt(2),sqrt(3),1"), DomainError);
    CHECK_THROWS_AS(vec("1,,2"), ParseError);
}

TEST_CASE("half perimeter") {
    CHECK(half_perimeter(vec("1,2,3,4,5")) == QuadraticScalar(q(15, 2)));
    CHECK(half_perimeter(vec("1,1,1,1/2")) == QuadraticScalar(q(7, 4)));
    CHECK(half_perimeter(vec("1/4,1/4,1/4,1/4,2,2")) == QuadraticScalar(q(5, 2)));
}

TEST_CASE("classify subsets") {
    // J = {1,2,3}, {3}, {4,5} in 1-based leg numbers
    CHECK(classify_subset(vec("1,2,3,4,5"), 0b00111) == SubsetClass::Short);
    CHECK(classify_subset(vec("1,2,3"), 0b100) == SubsetClass::Median);
    CHECK(classify_subset(vec("1,2,3,4,5"), 0b11000) == SubsetClass::Long);
    CHECK(to_string(SubsetClass::Median) == "median");
}

TEST_CASE("genericity") {
    CHECK(is_generic(vec("1,2,4")));
    CHECK_FALSE(is_generic(vec("1,2,3")));
    CHECK_FALSE(is_generic(vec("1/4,1/4,1/4,1/4,2,2")));
    CHECK(is_generic(vec("1,1,1,1/2")));
    CHECK(is_generic(vec("1/3,1/3,1/3,2,sqrt(3)")));
    CHECK_FALSE(is_generic(vec("1,1,sqrt(2),sqrt(2)")));
    CHECK(min_abs_signed_sum({QuadraticScalar(1), QuadraticScalar(2), QuadraticScalar(4)}) == QuadraticScalar(1));
    CHECK(min_abs_signed_sum({QuadraticScalar(1), QuadraticScalar(1), QuadraticScalar(1)}) == QuadraticScalar(1));
    CHECK(min_abs_signed_sum({QuadraticScalar(3), QuadraticScalar::sqrt(2)}) == QuadraticScalar(q(3), q(-1), q(2)));
}

TEST_CASE("maximal fixed index") {
    CHECK(max_fixed_index(vec("1,1,1,1/2")) == 0);
    CHECK(max_fixed_index(vec("1,3,2,5")) == 1);
    CHECK(max_fixed_index(vec("1/4,1/4,1/4,1/4,2,2")) == 4);
    CHECK(maximal_fixed_indices(vec("2,1,2,2,9")) == std::vector<std::size_t>{0, 2, 3});
}

TEST_CASE("count_ckdk examples") {
    for (auto engine : {Engine::Enumeration, Engine::DynamicProgramming, Engine::Auto}) {
        auto a = count_ckdk(vec("1,1,1/2"), engine);
        CHECK(a.c == big({1, 0}));
        CHECK(a.d == big({0, 0}));
        auto b = count_ckdk(vec("1,1,1,1/2"), engine);
        CHECK(b.c == big({1, 0, 0}));
        CHECK(b.d == big({0, 1, 0}));
        auto c = count_ckdk(vec("1,1,1,2"), engine);
        CHECK(c.c == big({1, 2, 0}));
        CHECK(c.d == big({0, 0, 0}));
        CHECK(c.generic);
    }
    CHECK(count_ckdk_dp(vec("1,2,3,4,5,6")) == count_ckdk_enum(vec("1,2,3,4,5,6")));
}

TEST_CASE("count_alpha examples") {
    CHECK(count_alpha(vec("1,1,1,2")) == big({1, 0, 0}));
    CHECK(count_alpha(vec("1,1,1,1/2")) == big({1, 3, 0}));
    CHECK(count_alpha(vec("1,1,10")) == big({0, 0}));
    CHECK(count_alpha(vec("1,1,1,1/2"), Engine::Enumeration) == big({1, 3, 0}));
}

TEST_CASE("non-generic vectors count medians toward c and are flagged") {
    const auto l = vec("1/4,1/4,1/4,1/4,2,2");
    const auto counts = count_ckdk(l, Engine::Enumeration);
    CHECK(counts.c == big({1, 4, 6, 0, 0}));
    CHECK(counts.d == big({0, 0, 0, 0, 0}));
    CHECK_FALSE(counts.generic);
    CHECK(count_ckdk_dp(l) == counts);
}

TEST_CASE("engine errors") {
    CHECK_THROWS_AS((void)count_ckdk_dp(vec("1,2,sqrt(2)")), DomainError);
    std::vector<Rational> many(25, q(1));
    many.back() = q(1, 2);
    CHECK_THROWS_AS((void)count_ckdk_enum(LengthVector::of(many)), CapacityError);
    // a huge common denominator overflows the DP table
    CHECK_THROWS_AS((void)count_ckdk_dp(vec("1/1000003,1/1000033,1/1000037,1/1000039,1")), CapacityError);
    CHECK_NOTHROW((void)count_ckdk(vec("1/1000003,1/1000033,1/1000037,1/1000039,1"), Engine::Auto));
    CHECK_THROWS_AS((void)count_ckdk_enum(vec("1,2,2,1"), std::size_t{0}), DomainError);
}

TEST_CASE("engines agree with the subset table") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 150; ++trial) {
        const auto l = random_rational(rng, 3 + rng() % 12, 25, 6);
        CAPTURE(l.to_string());
        const auto table = counts_from_table(l, max_fixed_index(l));
        const auto en = count_ckdk_enum(l);
        CHECK(en == table);
        CHECK(count_ckdk_dp(l) == table);
    }
}

TEST_CASE("quadratic telescopic leg: enumeration agrees with the subset table") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        auto legs = random_rational(rng, 3 + rng() % 8, 12, 4).lengths();
        legs.back() = QuadraticScalar(q(0), q(1 + static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 3)), q(2));
        const LengthVector l(legs);
        CAPTURE(l.to_string());
        CHECK(count_ckdk_enum(l) == counts_from_table(l, max_fixed_index(l)));
    }
}

TEST_CASE("pivot tie independence") {
    std::mt19937_64 rng(9);
    int ties = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto l = random_rational(rng, 4 + rng() % 8, 6, 2);
        const auto maximal = maximal_fixed_indices(l);
        if (maximal.size() < 2) continue;
        ++ties;
        const auto reference = count_ckdk_enum(l);
        for (auto pivot : maximal) {
            auto other = count_ckdk_enum(l, pivot);
            auto dp = count_ckdk_dp(l, pivot);
            CHECK(other.c == reference.c);
            CHECK(other.d == reference.d);
            CHECK(dp == other);
        }
    }
    CHECK(ties > 20);
}

TEST_CASE("permutation invariance and binomial bounds") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const auto l = random_rational(rng, 4 + rng() % 10, 30, 4);
        auto legs = l.lengths();
        std::shuffle(legs.begin(), legs.end() - 1, rng);
        const LengthVector shuffled(legs);
        const auto a = count_ckdk(l);
        const auto b = count_ckdk(shuffled);
        CHECK(a.c == b.c);
        CHECK(a.d == b.d);
        CHECK(a.generic == b.generic);
        CHECK(a.d[0] == 0);
        const auto n = l.size();
        for (std::size_t k = 0; k + 1 < n; ++k) {
            CHECK(a.c[k] <= binomial(n - 2, k));
            if (k > 0) CHECK(a.d[k] <= binomial(n - 2, k - 1));
        }
    }
}

TEST_CASE("monotonicity in the telescopic length") {
    // c sets leave the telescopic leg in the complement, d sets carry it

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const auto l = random_rational(rng, 4 + rng() % 8, 20, 3);
        const auto bigger = l.with_telescopic(l.telescopic() + QuadraticScalar(q(1 + static_cast<long>(rng() % 10), 2)));
        const auto a = count_ckdk(l);
        const auto b = count_ckdk(bigger);
        for (std::size_t k = 0; k < a.c.size(); ++k) {
            CHECK(b.c[k] >= a.c[k]);
            CHECK(b.d[k] <= a.d[k]);
        }
    }
}

TEST_CASE("DP handles n = 40 within the binomial bounds") {
    std::mt19937_64 rng(19);
    const auto l = random_rational(rng, 40, 20, 4);
    const auto counts = count_ckdk(l, Engine::DynamicProgramming);
    for (std::size_t k = 0; k < counts.c.size(); ++k) CHECK(counts.c[k] <= binomial(38, k));
    BigInt total = counts.c_total() + counts.d_total();
    CHECK(total > 0);
    // alpha via DP matches alpha via the identity-free enumeration on a 20-leg slice
    std::vector<QuadraticScalar> slice(l.lengths().begin(), l.lengths().begin() + 19);
    slice.push_back(l.telescopic());
    const LengthVector small(slice);
    CHECK(count_alpha(small, Engine::DynamicProgramming) == count_alpha(small, Engine::Enumeration));
}

TEST_CASE("DP switches to big-integer counts above 63 legs") {
    std::vector<Rational> legs(70, q(1));
    legs[69] = q(1, 2);
    const auto l = LengthVector::of(legs);
    const auto counts = count_ckdk_dp(l);
    // 69 unit fixed legs, telescopic 1/2, half perimeter 139/4: a (k+1)-set of unit legs is short iff k+1 <= 34
    for (std::size_t k = 0; k < counts.c.size(); ++k) CHECK(counts.c[k] == (k + 1 <= 34 ? binomial(68, k) : BigInt(0)));
    // with the telescopic leg: k unit legs + 1/2 < 139/4 iff k <= 34, pivot among them
    for (std::size_t k = 1; k < counts.d.size(); ++k) CHECK(counts.d[k] == (k <= 34 ? binomial(68, k - 1) : BigInt(0)));
}
