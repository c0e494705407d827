#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <vector>

#include "linkbetti/subset_counting.hpp"

namespace linkbetti::oracle {

// f(theta) = -|l_1 + sum_{i=2}^{n-1} l_i e^{i theta_i}|^2 with the first leg
// pinned to the positive real axis. Takes n-2 angles in [0, 2pi).
double f_value(const LengthVector& lengths, const std::vector<double>& angles);

// |l_1 e^{i phi} + sum l_i e^{i (theta_i + phi)}|: the same chain seen after a
// global rotation by phi. Agrees with sqrt(-f_value) for every phi.
double chain_norm(const LengthVector& lengths, const std::vector<double>& angles, double phi);

inline constexpr long kGridCellLimit = 100'000'000;

struct GridConfig {
    long resolution = 32;      // cells per axis, >= 16
    int refinement_rounds = 1;  // >= 1
    // Smallest admissible |signed sum|; defaults to 2 pi max(l) / resolution.
    std::optional<double> margin;
};

struct GridRun {
    long resolution = 0;
    long members = 0;
    long components = 0;
};

struct GridResult {
    long b0 = 0;
    std::vector<GridRun> runs;
};

// Components of {|sum l_i u_i| <= l_n} on the torus of the n-2 free angles,
// sampled at cell centers with periodic face adjacency. Resolutions double
// until two consecutive counts agree; throws InconclusiveError otherwise.
// Requires n - 2 <= 4 and a genericity margin above the configured bound.
GridResult grid_components(const LengthVector& lengths, const GridConfig& cfg = {});

long grid_b0(const LengthVector& lengths, const GridConfig& cfg = {});

struct SubsetRow {
    SubsetMask mask = 0;
    QuadraticScalar sum;
    SubsetClass cls = SubsetClass::Short;
};

// Visits every subset of the legs in increasing mask order. n <= 24.
void for_each_subset(const LengthVector& lengths, const std::function<void(const SubsetRow&)>& visit);

std::vector<SubsetRow> enum_subsets(const LengthVector& lengths);

// CSV with header "mask,sum,class"; sums are exact.
void write_subsets_csv(const LengthVector& lengths, std::ostream& out);

}  // namespace linkbetti::oracle
