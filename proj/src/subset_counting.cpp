#include "linkbetti/subset_counting.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include <boost/dynamic_bitset.hpp>

#include "linkbetti/errors.hpp"
#include "scaled_legs.hpp"

namespace linkbetti {

namespace detail {

ScaledLegs ScaledLegs::from(const std::vector<QuadraticScalar>& legs) {
    ScaledLegs out;
    for (const auto& leg : legs) {
        if (!leg.is_rational() && !out.has_root()) {
            out.p = leg.radicand().numerator();
            out.q = leg.radicand().denominator();
        }
    }
    BigInt scale = 1;
    for (const auto& leg : legs) {
        mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), leg.rational_part().denominator().get_mpz_t());
        mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), leg.irrational_coefficient().denominator().get_mpz_t());
    }
    out.scale = scale;
    out.a.reserve(legs.size());
    out.b.reserve(legs.size());
    for (const auto& leg : legs) {
        const auto& ra = leg.rational_part();
        const auto& rb = leg.irrational_coefficient();
        out.a.push_back(ra.numerator() * (scale / ra.denominator()));
        out.b.push_back(rb.numerator() * (scale / rb.denominator()));
        out.total_a += out.a.back();
        out.total_b += out.b.back();
    }
    return out;
}

int sign_with_root(const BigInt& x, const BigInt& y, const BigInt& p, const BigInt& q) {
    const int sx = sgn(x);
    const int sy = sgn(y);
    if (p == 0 || sy == 0) return sx;
    if (sx == 0 || sx == sy) return sy;
    const BigInt lhs = x * x * q;
    const BigInt rhs = y * y * p;
    const int c = cmp(lhs, rhs);
    return c > 0 ? sx : (c < 0 ? sy : 0);
}

bool fits_i62(const BigInt& value) { return mpz_sizeinbase(value.get_mpz_t(), 2) <= 62; }

}  // namespace detail

namespace {

using detail::ScaledLegs;

constexpr std::uint64_t kBitsetLimit = 400'000'000;

int sgn64(std::int64_t x) { return (x > 0) - (x < 0); }

// Visits every subset that contains `anchor`, in Gray-code order, calling
// visit(mask, sign of (sum_J - half perimeter)).
class AnchoredEnumerator {
public:
    AnchoredEnumerator(const ScaledLegs& legs, std::size_t anchor) : legs_(legs), anchor_(anchor) {
        const std::size_t n = legs.a.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (i != anchor) others_.push_back(i);
        }
        BigInt abs_a = 0;
        BigInt abs_b = 0;
        for (std::size_t i = 0; i < n; ++i) {
            abs_a += abs(legs.a[i]);
            abs_b += abs(legs.b[i]);
        }
        const BigInt bound_a = 3 * abs_a;
        const BigInt bound_b = 3 * abs_b;
        // The fast path squares 2*sum - total in 128-bit arithmetic.
        fast_ = detail::fits_i62(bound_a) && detail::fits_i62(bound_b) &&
                mpz_sizeinbase(BigInt(bound_a * bound_a * legs.q).get_mpz_t(), 2) <= 125 &&
                mpz_sizeinbase(BigInt(bound_b * bound_b * legs.p).get_mpz_t(), 2) <= 125;
    }

    template <class Visit>
    void run(Visit&& visit) const {
        if (fast_) {
            run_fast(visit);
        } else {
            run_exact(visit);
        }
    }

private:
    template <class Visit>
    void run_fast(Visit& visit) const {
        const std::size_t n = legs_.a.size();
        std::vector<std::int64_t> a(n);
        std::vector<std::int64_t> b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = legs_.a[i].get_si();
            b[i] = legs_.b[i].get_si();
        }
        const std::int64_t total_a = legs_.total_a.get_si();
        const std::int64_t total_b = legs_.total_b.get_si();
        const bool root = legs_.has_root();
        const __int128 p = root ? static_cast<__int128>(legs_.p.get_si()) : 0;
        const __int128 q = root ? static_cast<__int128>(legs_.q.get_si()) : 1;

        auto sign_of = [&](std::int64_t sa, std::int64_t sb) {
            const std::int64_t x = 2 * sa - total_a;
            const std::int64_t y = 2 * sb - total_b;
            const int sx = sgn64(x);
            const int sy = sgn64(y);
            if (!root || sy == 0) return sx;
            if (sx == 0 || sx == sy) return sy;
            const __int128 lhs = static_cast<__int128>(x) * x * q;
            const __int128 rhs = static_cast<__int128>(y) * y * p;
            return lhs > rhs ? sx : (lhs < rhs ? sy : 0);
        };

        SubsetMask mask = SubsetMask{1} << anchor_;
        std::int64_t sa = a[anchor_];
        std::int64_t sb = b[anchor_];
        visit(mask, sign_of(sa, sb));
        const std::uint64_t count = std::uint64_t{1} << others_.size();
        for (std::uint64_t step = 1; step < count; ++step) {
            const std::size_t leg = others_[static_cast<std::size_t>(std::countr_zero(step))];
            const SubsetMask bit = SubsetMask{1} << leg;
            if (mask & bit) {
                sa -= a[leg];
                sb -= b[leg];
            } else {
                sa += a[leg];
                sb += b[leg];
            }
            mask ^= bit;
            visit(mask, sign_of(sa, sb));
        }
    }

    template <class Visit>
    void run_exact(Visit& visit) const {
        SubsetMask mask = SubsetMask{1} << anchor_;
        BigInt sa = legs_.a[anchor_];
        BigInt sb = legs_.b[anchor_];
        auto sign_of = [&] {
            return detail::sign_with_root(BigInt(2 * sa - legs_.total_a), BigInt(2 * sb - legs_.total_b),
                                          legs_.p, legs_.q);
        };
        visit(mask, sign_of());
        const std::uint64_t count = std::uint64_t{1} << others_.size();
        for (std::uint64_t step = 1; step < count; ++step) {
            const std::size_t leg = others_[static_cast<std::size_t>(std::countr_zero(step))];
            const SubsetMask bit = SubsetMask{1} << leg;
            if (mask & bit) {
                sa -= legs_.a[leg];
                sb -= legs_.b[leg];
            } else {
                sa += legs_.a[leg];
                sb += legs_.b[leg];
            }
            mask ^= bit;
            visit(mask, sign_of());
        }
    }

    const ScaledLegs& legs_;
    std::size_t anchor_;
    std::vector<std::size_t> others_;
    bool fast_ = false;
};

void require_enumerable(const LengthVector& lengths, std::string_view what) {
    if (lengths.size() > kEnumerationCap) {
        throw CapacityError(std::string(what) + ": n = " + std::to_string(lengths.size()) +
                            " exceeds the enumeration cap of " + std::to_string(kEnumerationCap) +
                            "; use the dynamic-programming or closed-form engine");
    }
}

std::vector<BigInt> to_big(const std::vector<std::uint64_t>& counts) {
    std::vector<BigInt> out;
    out.reserve(counts.size());
    for (auto v : counts) {
        BigInt x;
        mpz_import(x.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
        out.push_back(std::move(x));
    }
    return out;
}

std::size_t resolve_pivot(const LengthVector& lengths, std::optional<std::size_t> pivot) {
    if (!pivot) return max_fixed_index(lengths);
    const auto candidates = maximal_fixed_indices(lengths);
    if (std::find(candidates.begin(), candidates.end(), *pivot) == candidates.end()) {
        throw DomainError("pivot " + std::to_string(*pivot) + " is not a fixed leg of maximal length");
    }
    return *pivot;
}

// Integer weights of an all-rational vector.
std::vector<std::int64_t> integer_weights(const LengthVector& lengths, std::int64_t& total) {
    if (!lengths.is_rational()) {
        throw DomainError(
            "the subset-sum DP needs rational lengths; use the closed-form or enumeration engine for "
            "quadratic legs");
    }
    const auto legs = ScaledLegs::from(lengths.lengths());
    if (!detail::fits_i62(legs.total_a)) {
        throw CapacityError("scaled perimeter " + to_string(legs.total_a) + " is too large for the DP engine");
    }
    std::vector<std::int64_t> w;
    w.reserve(legs.a.size());
    for (const auto& x : legs.a) w.push_back(x.get_si());
    total = legs.total_a.get_si();
    return w;
}

// Bit s set <=> some subset of `weights` sums to s, for s <= limit.
boost::dynamic_bitset<> reachable_sums(const std::vector<std::int64_t>& weights, std::int64_t limit) {
    boost::dynamic_bitset<> reach(static_cast<std::size_t>(limit) + 1);
    reach.set(0);
    for (auto w : weights) {
        if (w <= limit) reach |= reach << static_cast<std::size_t>(w);
    }
    return reach;
}

// Number of subsets of `items` with a given cardinality whose sum is <= limit,
// for every cardinality 0..items.size(). limit < 0 yields all zeros.
template <class Count>
std::vector<std::vector<Count>> cardinality_prefix_counts(const std::vector<std::int64_t>& items,
                                                          const std::vector<std::int64_t>& limits) {
    const std::size_t m = items.size();
    std::int64_t max_limit = -1;
    for (auto l : limits) max_limit = std::max(max_limit, l);
    const std::int64_t item_sum = std::accumulate(items.begin(), items.end(), std::int64_t{0});
    const std::int64_t width = std::min(max_limit, item_sum) + 1;

    std::vector<std::vector<Count>> out(limits.size(), std::vector<Count>(m + 1, Count(0)));
    if (width <= 0) return out;
    const auto cells = static_cast<std::uint64_t>(m + 1) * static_cast<std::uint64_t>(width);
    if (cells > kDpCellLimit) {
        throw CapacityError("subset-sum DP would need " + std::to_string(cells) + " cells (limit " +
                            std::to_string(kDpCellLimit) + "); reduce denominators or use enumeration");
    }
    const auto w = static_cast<std::size_t>(width);
    std::vector<Count> table(static_cast<std::size_t>(cells), Count(0));
    auto at = [&](std::size_t j, std::size_t s) -> Count& { return table[j * w + s]; };
    at(0, 0) = Count(1);
    std::size_t processed = 0;
    for (auto item : items) {
        const auto wt = static_cast<std::size_t>(item);
        if (wt < w) {
            for (std::size_t j = processed + 1; j-- > 0;) {
                for (std::size_t s = w - wt; s-- > 0;) {
                    if (at(j, s) != 0) at(j + 1, s + wt) += at(j, s);
                }
            }
        }
        ++processed;
    }
    for (std::size_t li = 0; li < limits.size(); ++li) {
        if (limits[li] < 0) continue;
        const auto upto = std::min<std::size_t>(static_cast<std::size_t>(limits[li]) + 1, w);
        for (std::size_t j = 0; j <= m; ++j) {
            Count acc(0);
            for (std::size_t s = 0; s < upto; ++s) acc += at(j, s);
            out[li][j] = acc;
        }
    }
    return out;
}

std::vector<std::vector<BigInt>> prefix_counts(const std::vector<std::int64_t>& items,
                                               const std::vector<std::int64_t>& limits) {
    // Counts of m items never exceed 2^m.
    if (items.size() <= 63) {
        const auto raw = cardinality_prefix_counts<std::uint64_t>(items, limits);
        std::vector<std::vector<BigInt>> out;
        for (const auto& row : raw) out.push_back(to_big(row));
        return out;
    }
    return cardinality_prefix_counts<BigInt>(items, limits);
}

// floor(x / 2) for possibly negative x.
std::int64_t floor_half(std::int64_t x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }

}  // namespace

std::string_view to_string(SubsetClass cls) {
    switch (cls) {
        case SubsetClass::Short: return "short";
        case SubsetClass::Median: return "median";
        case SubsetClass::Long: return "long";
    }
    return "?";
}

BigInt SubsetCounts::c_total() const {
    BigInt t = 0;
    for (const auto& x : c) t += x;
    return t;
}

BigInt SubsetCounts::d_total() const {
    BigInt t = 0;
    for (const auto& x : d) t += x;
    return t;
}

QuadraticScalar subset_sum(const LengthVector& lengths, SubsetMask mask) {
    QuadraticScalar sum;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        if (mask & (SubsetMask{1} << i)) sum += lengths[i];
    }
    return sum;
}

QuadraticScalar half_perimeter(const LengthVector& lengths) {
    QuadraticScalar total;
    for (const auto& leg : lengths.lengths()) total += leg;
    return total * Rational(1, 2);
}

SubsetClass classify_subset(const LengthVector& lengths, SubsetMask mask) {
    if (lengths.size() < 64 && (mask >> lengths.size()) != 0) {
        throw DomainError("subset mask refers to legs beyond n = " + std::to_string(lengths.size()));
    }
    const auto c = subset_sum(lengths, mask) <=> half_perimeter(lengths);
    if (c < 0) return SubsetClass::Short;
    if (c > 0) return SubsetClass::Long;
    return SubsetClass::Median;
}

bool is_generic(const LengthVector& lengths) {
    const auto legs = ScaledLegs::from(lengths.lengths());
    const std::size_t n = lengths.size();

    // Median <=> 2 * sum_J a = total_a and 2 * sum_J b = total_b (sqrt(p/q)
    // is irrational after normalization). Enumerate the legs carrying a root,
    // and answer the rational part with a reachability bitset.
    std::vector<std::size_t> rooted;
    std::vector<std::size_t> plain;
    for (std::size_t i = 0; i < n; ++i) (legs.b[i] != 0 ? rooted : plain).push_back(i);
    if (legs.total_b % 2 != 0 && !rooted.empty()) return true;

    BigInt plain_total = 0;
    for (auto i : plain) plain_total += legs.a[i];
    if (rooted.size() > kEnumerationCap || !detail::fits_i62(plain_total) ||
        plain_total > BigInt(std::to_string(kBitsetLimit))) {
        if (n > kEnumerationCap) {
            throw CapacityError("genericity check for n = " + std::to_string(n) + " exceeds both the bitset and "
                                "enumeration limits");
        }
        bool generic = true;
        AnchoredEnumerator(legs, 0).run([&](SubsetMask, int sign) {
            if (sign == 0) generic = false;
        });
        return generic;
    }

    std::vector<std::int64_t> weights;
    for (auto i : plain) weights.push_back(legs.a[i].get_si());
    const auto limit = plain_total.get_si();
    const auto reach = reachable_sums(weights, limit);

    const std::uint64_t count = std::uint64_t{1} << rooted.size();
    for (std::uint64_t sel = 0; sel < count; ++sel) {
        BigInt sa = 0;
        BigInt sb = 0;
        for (std::size_t j = 0; j < rooted.size(); ++j) {
            if (sel & (std::uint64_t{1} << j)) {
                sa += legs.a[rooted[j]];
                sb += legs.b[rooted[j]];
            }
        }
        if (2 * sb != legs.total_b) continue;
        // need plain subset with 2 * (sa + s) = total_a
        const BigInt twice_target = legs.total_a - 2 * sa;
        if (twice_target < 0 || twice_target % 2 != 0) continue;
        const BigInt target = twice_target / 2;
        if (target > limit) continue;
        if (reach.test(static_cast<std::size_t>(target.get_si()))) return false;
    }
    return true;
}

QuadraticScalar min_abs_signed_sum(const std::vector<QuadraticScalar>& legs) {
    if (legs.empty()) return {};
    const bool rational = std::all_of(legs.begin(), legs.end(), [](const auto& x) { return x.is_rational(); });
    const auto scaled = ScaledLegs::from(legs);
    if (rational && detail::fits_i62(scaled.total_a) && scaled.total_a / 2 <= BigInt(std::to_string(kBitsetLimit))) {
        std::vector<std::int64_t> w;
        for (const auto& x : scaled.a) w.push_back(x.get_si());
        const std::int64_t total = scaled.total_a.get_si();
        const auto reach = reachable_sums(w, total / 2);
        std::int64_t best = total / 2;
        while (!reach.test(static_cast<std::size_t>(best))) --best;
        return QuadraticScalar(Rational(BigInt(std::to_string(total - 2 * best)), scaled.scale));
    }
    if (legs.size() > kEnumerationCap) {
        throw CapacityError("min_abs_signed_sum: too many legs for enumeration");
    }
    QuadraticScalar total;
    for (const auto& x : legs) total += x;
    // Signed sum for J is 2*sum_J - total; leg 0 fixed in J covers all up to sign.
    QuadraticScalar sum = legs[0];
    std::uint64_t mask = 1;
    auto magnitude = [&] {
        auto s = sum * Rational(2) - total;
        return s.sign() < 0 ? -s : s;
    };
    QuadraticScalar best = magnitude();
    const std::uint64_t count = std::uint64_t{1} << (legs.size() - 1);
    for (std::uint64_t step = 1; step < count; ++step) {
        const std::size_t leg = 1 + static_cast<std::size_t>(std::countr_zero(step));
        const std::uint64_t bit = std::uint64_t{1} << leg;
        if (mask & bit) {
            sum -= legs[leg];
        } else {
            sum += legs[leg];
        }
        mask ^= bit;
        auto m = magnitude();
        if (m < best) best = m;
    }
    return best;
}

std::vector<std::size_t> maximal_fixed_indices(const LengthVector& lengths) {
    std::vector<std::size_t> out{0};
    for (std::size_t i = 1; i < lengths.fixed_count(); ++i) {
        const auto c = lengths[i] <=> lengths[out.front()];
        if (c > 0) {
            out.assign(1, i);
        } else if (c == 0) {
            out.push_back(i);
        }
    }
    return out;
}

std::size_t max_fixed_index(const LengthVector& lengths) { return maximal_fixed_indices(lengths).front(); }

SubsetCounts count_ckdk_enum(const LengthVector& lengths, std::optional<std::size_t> pivot) {
    require_enumerable(lengths, "count_ckdk_enum");
    const std::size_t n = lengths.size();
    const std::size_t p = resolve_pivot(lengths, pivot);
    const std::size_t tel = lengths.telescopic_index();
    const SubsetMask tel_bit = SubsetMask{1} << tel;

    std::vector<std::uint64_t> c(n - 1, 0);
    std::vector<std::uint64_t> d(n - 1, 0);
    bool generic = true;
    const auto legs = ScaledLegs::from(lengths.lengths());
    AnchoredEnumerator(legs, p).run([&](SubsetMask mask, int sign) {
        if (sign == 0) generic = false;
        const auto k = static_cast<std::size_t>(std::popcount(mask)) - 1;
        if (mask & tel_bit) {
            if (sign < 0 && k < d.size()) ++d[k];
        } else if (sign <= 0) {
            ++c[k];
        }
    });

    SubsetCounts out;
    out.n = n;
    out.c = to_big(c);
    out.d = to_big(d);
    out.pivot = p;
    out.generic = generic;
    return out;
}

SubsetCounts count_ckdk_dp(const LengthVector& lengths, std::optional<std::size_t> pivot) {
    const std::size_t n = lengths.size();
    const std::size_t p = resolve_pivot(lengths, pivot);
    const std::size_t tel = lengths.telescopic_index();
    std::int64_t total = 0;
    const auto w = integer_weights(lengths, total);

    std::vector<std::int64_t> others;
    for (std::size_t i = 0; i < tel; ++i) {
        if (i != p) others.push_back(w[i]);
    }
    // c: 2 (w_p + s) <= T ;  d: 2 (w_p + w_tel + s) < T
    const std::int64_t rc = total - 2 * w[p];
    const std::int64_t rd = total - 2 * w[p] - 2 * w[tel];
    const std::int64_t limit_c = rc >= 0 ? floor_half(rc) : -1;
    const std::int64_t limit_d = rd > 0 ? floor_half(rd - 1) : -1;
    const auto rows = prefix_counts(others, {limit_c, limit_d});

    SubsetCounts out;
    out.n = n;
    out.c.assign(n - 1, BigInt(0));
    out.d.assign(n - 1, BigInt(0));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        out.c[k] = rows[0][k];
        if (k >= 1) out.d[k] = rows[1][k - 1];
    }
    out.pivot = p;
    out.generic = is_generic(lengths);
    return out;
}

SubsetCounts count_ckdk(const LengthVector& lengths, Engine engine) {
    switch (engine) {
        case Engine::Enumeration: return count_ckdk_enum(lengths);
        case Engine::DynamicProgramming: return count_ckdk_dp(lengths);
        case Engine::Auto: break;
    }
    if (lengths.is_rational()) {
        try {
            return count_ckdk_dp(lengths);
        } catch (const CapacityError&) {
            if (lengths.size() > kEnumerationCap) throw;
        }
    }
    return count_ckdk_enum(lengths);
}

std::vector<BigInt> count_alpha(const LengthVector& lengths, Engine engine) {
    const std::size_t n = lengths.size();
    const std::size_t tel = lengths.telescopic_index();

    auto by_enumeration = [&] {
        require_enumerable(lengths, "count_alpha");
        std::vector<std::uint64_t> alpha(n - 1, 0);
        const auto legs = ScaledLegs::from(lengths.lengths());
        AnchoredEnumerator(legs, tel).run([&](SubsetMask mask, int sign) {
            const auto k = static_cast<std::size_t>(std::popcount(mask)) - 1;
            if (sign < 0 && k < alpha.size()) ++alpha[k];
        });
        return to_big(alpha);
    };
    auto by_dp = [&] {
        std::int64_t total = 0;
        const auto w = integer_weights(lengths, total);
        const std::vector<std::int64_t> fixed(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(tel));
        const std::int64_t r = total - 2 * w[tel];
        const std::int64_t limit = r > 0 ? floor_half(r - 1) : -1;
        auto row = prefix_counts(fixed, {limit}).front();
        row.resize(n - 1);
        return row;
    };

    switch (engine) {
        case Engine::Enumeration: return by_enumeration();
        case Engine::DynamicProgramming: return by_dp();
        case Engine::Auto: break;
    }
    if (lengths.is_rational()) {
        try {
            return by_dp();
        } catch (const CapacityError&) {
            if (n > kEnumerationCap) throw;
        }
    }
    return by_enumeration();
}

}  // namespace linkbetti
