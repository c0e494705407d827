#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "linkbetti/length_vector.hpp"

namespace linkbetti {

// Bit i set <=> leg i (0-based) belongs to the subset.
using SubsetMask = std::uint64_t;

enum class SubsetClass { Short, Median, Long };

std::string_view to_string(SubsetClass cls);

// Largest n accepted by the enumeration engines (2^24 subsets).
inline constexpr std::size_t kEnumerationCap = 24;
// Largest (cardinality x scaled sum) table the subset-sum DP may allocate.
inline constexpr std::uint64_t kDpCellLimit = 100'000'000;

enum class Engine { Auto, Enumeration, DynamicProgramming };

// Counts c_k, d_k (k = 0..n-2) for a length vector with n legs, relative to a
// pivot: a fixed leg of maximal length.
//
//   c_k = #{J : |J| = k+1, pivot in J, telescopic not in J, J short or median}
//   d_k = #{J : |J| = k+1, pivot in J, telescopic in J, J short},  d_0 = 0
struct SubsetCounts {
    std::size_t n = 0;
    std::vector<BigInt> c;
    std::vector<BigInt> d;
    std::optional<std::vector<BigInt>> alpha;
    std::size_t pivot = 0;
    // False when some subset is median; the counts still follow the
    // definition literally (medians count toward c), but the topological
    // reading of them needs a generic vector.
    bool generic = true;

    BigInt c_total() const;
    BigInt d_total() const;

    friend bool operator==(const SubsetCounts&, const SubsetCounts&) = default;
};

// Sum of the legs in `mask`.
QuadraticScalar subset_sum(const LengthVector& lengths, SubsetMask mask);

// Half of the total length; J is short iff its sum is below this.
QuadraticScalar half_perimeter(const LengthVector& lengths);

SubsetClass classify_subset(const LengthVector& lengths, SubsetMask mask);

// True iff no signed sum of the legs vanishes (equivalently, no median subset).
bool is_generic(const LengthVector& lengths);

// min |sum_i e_i l_i| over all sign choices e_i = +-1; zero iff non-generic.
// Works on any list of positive legs, not only full length vectors.
QuadraticScalar min_abs_signed_sum(const std::vector<QuadraticScalar>& legs);

// Smallest 0-based fixed index attaining the maximal fixed length.
std::size_t max_fixed_index(const LengthVector& lengths);
// All fixed indices attaining the maximal fixed length.
std::vector<std::size_t> maximal_fixed_indices(const LengthVector& lengths);

// Literal enumeration of every subset containing the pivot. n <= 24.
SubsetCounts count_ckdk_enum(const LengthVector& lengths, std::optional<std::size_t> pivot = std::nullopt);

// Cardinality-stratified subset-sum DP over the fixed legs other than the
// pivot. Rational lengths only.
SubsetCounts count_ckdk_dp(const LengthVector& lengths, std::optional<std::size_t> pivot = std::nullopt);

// Dispatch: DP for rational vectors that fit the memory guard, enumeration
// otherwise.
SubsetCounts count_ckdk(const LengthVector& lengths, Engine engine = Engine::Auto);

// alpha_k = #{J : |J| = k+1, telescopic in J, J short}, k = 0..n-2.
std::vector<BigInt> count_alpha(const LengthVector& lengths, Engine engine = Engine::Auto);

// Closed form for the XY vector (1/N, ..., 1/N, h, sqrt(2v + h^2)), n = N+2.
// Requires N >= 2, h > 1/N (so the pivot is the h-leg) and v in [a_h, b_h].
SubsetCounts count_ckdk_xy_closed(long N, const Rational& h, const Rational& v);

}  // namespace linkbetti
