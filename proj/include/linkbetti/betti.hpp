#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "linkbetti/subset_counting.hpp"

namespace linkbetti {

// Ranks of H_k(K_l), k = 0..n-2, for a linkage with n legs.
struct BettiProfile {
    std::size_t n = 0;
    std::vector<BigInt> b;
    BigInt total = 0;
    BigInt euler = 0;
    bool generic = true;
    // Set when the profile was built from a length vector with n > 3.
    std::optional<bool> disconnected;

    std::size_t dimension() const { return n - 2; }
    int euler_sign() const { return sgn(euler); }
    BigInt euler_abs() const { return abs(euler); }

    friend bool operator==(const BettiProfile&, const BettiProfile&) = default;
};

// b_k = c_k + d_{n-3-k}, with d at non-positive indices read as 0.
BettiProfile betti_profile(const SubsetCounts& counts, std::size_t n);

// Counts + profile in one step; fills `disconnected` for n > 3.
BettiProfile betti_profile(const LengthVector& lengths, Engine engine = Engine::Auto);

struct Connectivity {
    bool disconnected = false;
    int components = 1;
};

// Decides l_{n-3} + l_{n-2} > half perimeter on the canonically sorted
// fixed legs (1-based indices). Requires n > 3.
Connectivity is_disconnected(const LengthVector& lengths);

// Checks that shrinking telescopic legs below the smallest positive signed
// sum of the fixed legs leaves the profile unchanged. `fixed_legs` must be
// generic; every candidate must be positive and strictly below that bound.
bool small_leg_stability(const std::vector<QuadraticScalar>& fixed_legs,
                         const std::vector<QuadraticScalar>& telescopic_candidates);

}  // namespace linkbetti
