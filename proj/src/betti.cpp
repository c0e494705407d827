#include "linkbetti/betti.hpp"

#include "linkbetti/errors.hpp"

namespace linkbetti {

BettiProfile betti_profile(const SubsetCounts& counts, std::size_t n) {
    if (n < 3 || counts.c.size() != n - 1 || counts.d.size() != n - 1) {
        throw DomainError("subset counts do not match a linkage with n = " + std::to_string(n) + " legs");
    }
    BettiProfile out;
    out.n = n;
    out.generic = counts.generic;
    out.b.assign(n - 1, BigInt(0));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        out.b[k] = counts.c[k];
        const auto dual = static_cast<long>(n) - 3 - static_cast<long>(k);
        if (dual > 0) out.b[k] += counts.d[static_cast<std::size_t>(dual)];
        out.total += out.b[k];
        if (k % 2 == 0) {
            out.euler += out.b[k];
        } else {
            out.euler -= out.b[k];
        }
    }
    return out;
}

BettiProfile betti_profile(const LengthVector& lengths, Engine engine) {
    auto profile = betti_profile(count_ckdk(lengths, engine), lengths.size());
    if (lengths.size() > 3) profile.disconnected = is_disconnected(lengths).disconnected;
    return profile;
}

Connectivity is_disconnected(const LengthVector& lengths) {
    const std::size_t n = lengths.size();
    if (n <= 3) throw DomainError("connectivity criterion needs n > 3, got n = " + std::to_string(n));
    const auto sorted = lengths.canonical();
    // 1-based l_{n-3}, l_{n-2}
    const auto pair = sorted[n - 4] + sorted[n - 3];
    Connectivity out;
    out.disconnected = pair > half_perimeter(sorted);
    out.components = out.disconnected ? 2 : 1;
    return out;
}

bool small_leg_stability(const std::vector<QuadraticScalar>& fixed_legs,
                         const std::vector<QuadraticScalar>& telescopic_candidates) {
    if (fixed_legs.size() < 2) throw DomainError("need at least two fixed legs");
    const auto bound = min_abs_signed_sum(fixed_legs);
    if (bound.sign() == 0) throw DomainError("fixed legs are not generic (some signed sum vanishes)");
    if (telescopic_candidates.empty()) throw DomainError("no telescopic candidates given");

    std::optional<BettiProfile> reference;
    for (const auto& candidate : telescopic_candidates) {
        if (candidate.sign() <= 0 || !(candidate < bound)) {
            throw DomainError("telescopic length " + candidate.to_string() +
                              " is not small: it must lie in (0, " + bound.to_string() + ")");
        }
        auto legs = fixed_legs;
        legs.push_back(candidate);
        auto profile = betti_profile(LengthVector(std::move(legs)));
        if (!reference) {
            reference = std::move(profile);
        } else if (profile != *reference) {
            return false;
        }
    }
    return true;
}

}  // namespace linkbetti
