#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "linkbetti/betti.hpp"
#include "linkbetti/length_vector.hpp"
#include "linkbetti/rational.hpp"

namespace linkbetti::xy {

// Anti-ferromagnetic mean-field XY model with N rotators in an external
// field h > 0. The sub-energy manifold {V <= N v} is the configuration space
// of the linkage (1/N, ..., 1/N, h, r) with telescopic leg r = sqrt(2v + h^2)
// and n = N + 2 legs.

// Exact-mode computations are refused above this N (b has ~0.3N digits).
inline constexpr long kExactModeLimit = 100'000;

struct VInterval {
    Rational lower;  // a_h
    Rational upper;  // b_h
};

// a_h = -h^2/2 for h <= 1, -h + 1/2 for h >= 1; b_h = h + 1/2.
VInterval v_interval(const Rational& h);

// r = sqrt(2v + h^2), the telescopic length.
QuadraticScalar magnetization_radius(const Rational& h, const Rational& v);

// p_v = (sqrt(2v + h^2) - h + 1) / 2.
QuadraticScalar p_of_v(const Rational& h, const Rational& v);

// Growth rate of the total Betti number: binary entropy of p_v for v <= 0,
// ln 2 for v >= 0. Requires v strictly inside (a_h, b_h).
double tau_analytic(const Rational& h, const Rational& v);

struct XYParams {
    long N = 2;
    Rational h{1};
    Rational v{0};

    long n() const { return N + 2; }
    // Checks N >= 2, h > 0, v in [a_h, b_h]; throws with the admissible range.
    void validate() const;
};

// (1/N, ..., 1/N, h, r) with the telescopic leg last.
LengthVector xy_length_vector(const XYParams& params);

// Genericity of the XY vector, decided in O(1) exact operations.
bool xy_is_generic(const XYParams& params);

// Largest k in [-1, N] with k/N <= p_v (the c-cutoff), and largest j in
// [-1, N-1] with j/N < 1 - p_v - h (the d-cutoff, j = k - 1).
struct Cutoffs {
    long c_max = -1;
    long d_max = -1;
};
Cutoffs xy_cutoffs(const XYParams& params);

enum class Mode { Auto, Exact, Logspace };

struct TotalBetti {
    std::optional<BigInt> exact;  // present in exact mode
    double log_value = 0.0;       // ln b
    Mode mode = Mode::Exact;
};

// b(M_v) = sum_k c_k + sum_k d_k through the closed-form counts.
TotalBetti total_betti_xy(const XYParams& params, Mode mode = Mode::Auto);

// ln sum_{k=0}^{K} C(N, k) via log-gamma and compensated summation of
// binomial ratios.
double log_partial_binomial_sum(long N, long K);

// ln b(M_v) / n with n = N + 2.
double tau_empirical(const XYParams& params, Mode mode = Mode::Auto);

struct EulerGrowth {
    BigInt euler = 0;
    int sign = 0;
    // ln|chi| / n; empty when chi = 0.
    std::optional<double> rate;
};

EulerGrowth euler_growth_xy(const XYParams& params);

// Full Betti profile of the sub-energy manifold from the closed-form counts.
BettiProfile xy_betti_profile(const XYParams& params);

struct CurvePoint {
    Rational v;
    QuadraticScalar p;
    std::optional<double> tau_analytic;  // empty at the interval endpoints
    std::vector<double> tau;             // one per requested N
    // ln|chi| / n and its sign; empty above the exact-mode limit (and the
    // rate also when chi = 0).
    std::vector<std::optional<int>> sigma_sign;
    std::vector<std::optional<double>> sigma;
};

// tau_analytic, tau_empirical and the Euler growth along a grid, in grid order.
std::vector<CurvePoint> tau_curve(const Rational& h, const std::vector<Rational>& grid, const std::vector<long>& Ns,
                                  Mode mode = Mode::Auto);

struct KinkCurve {
    std::vector<double> tau;
    // Centered second differences; NaN at the two ends.
    std::vector<double> second_difference;
    // Estimated tau''(v-) - tau''(v+) per grid point; NaN where the one-sided
    // extrapolation stencils do not fit.
    std::vector<double> jump;
    std::size_t location = 0;
    double location_v = 0.0;
    double jump_at_location = 0.0;
};

struct KinkReport {
    Rational h;
    Rational spacing;
    std::vector<Rational> grid;
    KinkCurve analytic;
    std::vector<std::pair<long, KinkCurve>> empirical;
    // tau''(0-) - tau''(0+) = -1/h^2 for the analytic rate.
    double expected_jump = 0.0;
};

// Locates the largest jump in the second difference of tau along a uniform
// grid inside (a_h, b_h). Each side is extrapolated to the candidate point
// from up to three one-sided second differences. The empirical curves are
// reported, not judged: at finite N the rate is piecewise analytic in v.
KinkReport kink_scan(const Rational& h, const std::vector<Rational>& grid, const std::vector<long>& Ns);

// Uniform grid of `steps` points from `from` to `to` inclusive.
std::vector<Rational> uniform_grid(const Rational& from, const Rational& to, long steps);

struct KinkProbe {
    double second_derivative_jump = 0.0;  // D2(-dv) - D2(+dv)
    double slope_mismatch = 0.0;          // |left slope - right slope| at v = 0
};

// Finite-difference look at tau_analytic around v = 0 with spacing dv.
// Slopes use one-sided second-order stencils.
KinkProbe kink_probe(const Rational& h, const Rational& dv);

}  // namespace linkbetti::xy
