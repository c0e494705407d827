#include "linkbetti/xy_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "linkbetti/errors.hpp"
#include "parallel.hpp"

namespace linkbetti {

namespace xy {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string range_text(const VInterval& iv) {
    return "[" + iv.lower.to_string() + ", " + iv.upper.to_string() + "]";
}

void require_positive_field(const Rational& h) {
    if (h.sign() <= 0) throw DomainError("h = " + h.to_string() + " must be positive (admissible range h > 0)");
}

void require_open_interval(const Rational& h, const Rational& v) {
    const auto iv = v_interval(h);
    if (!(iv.lower < v && v < iv.upper)) {
        throw RangeError("v = " + v.to_string() + " must lie in the open interval (a_h, b_h) = (" +
                         iv.lower.to_string() + ", " + iv.upper.to_string() + ") for h = " + h.to_string());
    }
}

void require_closed_form(const XYParams& params) {
    params.validate();
    if (!(params.h > Rational(1, params.N))) {
        throw DomainError("closed form needs h > 1/N (h = " + params.h.to_string() + ", 1/N = " +
                          Rational(1, params.N).to_string() + "); use the generic engines on the explicit vector");
    }
}

// Running binomials C(N, 0), C(N, 1), ... as exact integers.
class BinomialRow {
public:
    explicit BinomialRow(long N) : N_(N) {}
    const BigInt& value() const { return value_; }
    long k() const { return k_; }
    void advance() {
        value_ *= static_cast<unsigned long>(N_ - k_);
        mpz_divexact_ui(value_.get_mpz_t(), value_.get_mpz_t(), static_cast<unsigned long>(k_ + 1));
        ++k_;
    }

private:
    long N_;
    long k_ = 0;
    BigInt value_ = 1;
};

BigInt partial_binomial_sum(long N, long K) {
    BigInt sum = 0;
    BinomialRow row(N);
    for (long k = 0; k <= std::min(K, N); ++k) {
        sum += row.value();
        if (k < N) row.advance();
    }
    return sum;
}

double log_binomial(long N, long k) {
    return std::lgamma(static_cast<double>(N) + 1) - std::lgamma(static_cast<double>(k) + 1) -
           std::lgamma(static_cast<double>(N - k) + 1);
}

// ln sum_{k=0}^{K} C(N,k) for 0 <= K < N/2, summing downward from the
// largest term until the remaining terms are negligible.
double log_lower_binomial_sum(long N, long K) {
    const double top = log_binomial(N, K);
    double sum = 1.0;
    double compensation = 0.0;
    double term = 1.0;
    for (long k = K; k >= 1; --k) {
        term *= static_cast<double>(k) / static_cast<double>(N - k + 1);
        // Neumaier summation
        const double t = sum + term;
        compensation += std::fabs(sum) >= std::fabs(term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
        if (term < 1e-18 * sum) break;
    }
    return top + std::log(sum + compensation);
}

double log_sum_exp(double a, double b) {
    if (std::isinf(a) && a < 0) return b;
    if (std::isinf(b) && b < 0) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

std::vector<double> second_differences(const std::vector<double>& tau, double spacing) {
    std::vector<double> d2(tau.size(), kNaN);
    for (std::size_t i = 1; i + 1 < tau.size(); ++i) {
        d2[i] = (tau[i + 1] - 2 * tau[i] + tau[i - 1]) / (spacing * spacing);
    }
    return d2;
}

KinkCurve locate_kink(std::vector<double> tau, double spacing, const std::vector<Rational>& grid) {
    KinkCurve curve;
    curve.second_difference = second_differences(tau, spacing);
    curve.tau = std::move(tau);
    const std::size_t m = curve.tau.size();
    // Extrapolation order 0..2 depending on how many one-sided values fit.
    const std::size_t order = std::min<std::size_t>(2, (m - 5) / 2);
    static const std::vector<std::vector<double>> kStencils = {{1.0}, {2.0, -1.0}, {3.0, -3.0, 1.0}};
    const auto& stencil = kStencils[order];

    curve.jump.assign(m, kNaN);
    double best = -1.0;
    for (std::size_t i = order + 2; i + order + 2 < m; ++i) {
        double left = 0.0;
        double right = 0.0;
        for (std::size_t j = 0; j < stencil.size(); ++j) {
            left += stencil[j] * curve.second_difference[i - 1 - j];
            right += stencil[j] * curve.second_difference[i + 1 + j];
        }
        curve.jump[i] = left - right;
        if (std::fabs(curve.jump[i]) > best) {
            best = std::fabs(curve.jump[i]);
            curve.location = i;
        }
    }
    curve.location_v = grid[curve.location].to_double();
    curve.jump_at_location = curve.jump[curve.location];
    return curve;
}

}  // namespace

VInterval v_interval(const Rational& h) {
    require_positive_field(h);
    VInterval out;
    out.lower = h <= Rational(1) ? -(h * h) / Rational(2) : -h + Rational(1, 2);
    out.upper = h + Rational(1, 2);
    return out;
}

QuadraticScalar magnetization_radius(const Rational& h, const Rational& v) {
    const Rational radicand = Rational(2) * v + h * h;
    if (radicand.sign() < 0) {
        throw DomainError("2v + h^2 = " + radicand.to_string() + " is negative: v = " + v.to_string() +
                          " lies below -h^2/2 = " + (-(h * h) / Rational(2)).to_string() +
                          " where the sub-energy set is empty");
    }
    return QuadraticScalar::sqrt(radicand);
}

QuadraticScalar p_of_v(const Rational& h, const Rational& v) {
    return (magnetization_radius(h, v) + QuadraticScalar(Rational(1) - h)) * Rational(1, 2);
}

double tau_analytic(const Rational& h, const Rational& v) {
    require_positive_field(h);
    require_open_interval(h, v);
    if (v.sign() >= 0) return std::log(2.0);
    const double p = p_of_v(h, v).to_double();
    const double q = 1.0 - p;
    return -p * std::log(p) - q * std::log1p(-p);
}

void XYParams::validate() const {
    if (N < 2) throw DomainError("N = " + std::to_string(N) + " must be at least 2");
    require_positive_field(h);
    const auto iv = v_interval(h);
    if (v < iv.lower || v > iv.upper) {
        throw RangeError("v = " + v.to_string() + " outside [a_h, b_h] = " + range_text(iv) +
                         " for h = " + h.to_string());
    }
}

LengthVector xy_length_vector(const XYParams& params) {
    params.validate();
    std::vector<QuadraticScalar> legs(static_cast<std::size_t>(params.N), QuadraticScalar(Rational(1, params.N)));
    legs.emplace_back(params.h);
    legs.push_back(magnetization_radius(params.h, params.v));
    return LengthVector(std::move(legs));
}

bool xy_is_generic(const XYParams& params) {
    params.validate();
    const auto r = magnetization_radius(params.h, params.v);
    // Signed sums are j/N +- h +- r with j in {-N, -N+2, ..., N}; an
    // irrational r can never cancel.
    if (!r.is_rational()) return true;
    const Rational& rr = r.rational_part();
    for (const Rational& x : {params.h + rr, params.h - rr}) {
        const Rational scaled = x.abs() * Rational(params.N);
        if (!scaled.is_integer()) continue;
        const BigInt j = scaled.numerator();
        if (j <= params.N && (BigInt(params.N - j) % 2) == 0) return false;
    }
    return true;
}

Cutoffs xy_cutoffs(const XYParams& params) {
    params.validate();
    const auto p = p_of_v(params.h, params.v);
    const Rational N(params.N);
    Cutoffs out;
    const BigInt c_floor = (p * N).floor();
    out.c_max = c_floor < -1 ? -1 : (c_floor > params.N ? params.N : c_floor.get_si());
    // largest integer j with j < N q  is  -floor(-N q) - 1
    const auto q = QuadraticScalar(Rational(1) - params.h) - p;
    const BigInt j_max = BigInt(-(-(q * N)).floor()) - 1;
    out.d_max = j_max < -1 ? -1 : (j_max > params.N - 1 ? params.N - 1 : j_max.get_si());
    return out;
}

double log_partial_binomial_sum(long N, long K) {
    if (N < 0) throw DomainError("negative N in binomial sum");
    if (K < 0) return -std::numeric_limits<double>::infinity();
    const double ln2 = std::log(2.0);
    if (K >= N) return static_cast<double>(N) * ln2;
    if (2 * K < N) return log_lower_binomial_sum(N, K);
    // upper half: 2^N minus the lower tail sum_{j < N-K} C(N, j)
    const double tail = log_lower_binomial_sum(N, N - K - 1);
    return static_cast<double>(N) * ln2 + std::log1p(-std::exp(tail - static_cast<double>(N) * ln2));
}

TotalBetti total_betti_xy(const XYParams& params, Mode mode) {
    require_closed_form(params);
    if (mode == Mode::Auto) mode = params.N <= kExactModeLimit ? Mode::Exact : Mode::Logspace;
    const auto cut = xy_cutoffs(params);
    TotalBetti out;
    out.mode = mode;
    if (mode == Mode::Exact) {
        if (params.N > kExactModeLimit) {
            throw CapacityError("exact mode is limited to N <= " + std::to_string(kExactModeLimit) +
                                " (N = " + std::to_string(params.N) + "); use logspace mode");
        }
        BigInt b = partial_binomial_sum(params.N, cut.c_max) + partial_binomial_sum(params.N, cut.d_max);
        out.log_value = log_big(b);
        out.exact = std::move(b);
        return out;
    }
    out.log_value = log_sum_exp(log_partial_binomial_sum(params.N, cut.c_max),
                                log_partial_binomial_sum(params.N, cut.d_max));
    return out;
}

double tau_empirical(const XYParams& params, Mode mode) {
    return total_betti_xy(params, mode).log_value / static_cast<double>(params.n());
}

EulerGrowth euler_growth_xy(const XYParams& params) {
    require_closed_form(params);
    if (params.N > kExactModeLimit) {
        throw CapacityError("Euler characteristic needs exact mode, limited to N <= " +
                            std::to_string(kExactModeLimit));
    }
    const long N = params.N;
    const auto cut = xy_cutoffs(params);
    BigInt chi = 0;
    // sum_k (-1)^k c_k
    {
        BinomialRow row(N);
        for (long k = 0; k <= cut.c_max; ++k) {
            if (k % 2 == 0) {
                chi += row.value();
            } else {
                chi -= row.value();
            }
            if (k < N) row.advance();
        }
    }
    // sum_{j=1}^{n-3} (-1)^{n-3-j} d_j with d_j = C(N, j-1), n - 3 = N - 1
    {
        BinomialRow row(N);
        for (long j = 1; j <= N - 1 && j - 1 <= cut.d_max; ++j) {
            if ((N - 1 - j) % 2 == 0) {
                chi += row.value();
            } else {
                chi -= row.value();
            }
            row.advance();
        }
    }
    EulerGrowth out;
    out.sign = sgn(chi);
    if (out.sign != 0) out.rate = log_big(abs(chi)) / static_cast<double>(params.n());
    out.euler = std::move(chi);
    return out;
}

BettiProfile xy_betti_profile(const XYParams& params) {
    auto profile = betti_profile(count_ckdk_xy_closed(params.N, params.h, params.v),
                                 static_cast<std::size_t>(params.n()));
    if (magnetization_radius(params.h, params.v).sign() > 0) {
        profile.disconnected = is_disconnected(xy_length_vector(params)).disconnected;
    }
    return profile;
}

std::vector<Rational> uniform_grid(const Rational& from, const Rational& to, long steps) {
    if (steps < 2) throw DomainError("a grid needs at least 2 points, got " + std::to_string(steps));
    if (!(from < to)) throw DomainError("grid start " + from.to_string() + " must be below end " + to.to_string());
    std::vector<Rational> grid;
    grid.reserve(static_cast<std::size_t>(steps));
    const Rational step = (to - from) / Rational(steps - 1);
    for (long i = 0; i < steps; ++i) grid.push_back(from + step * Rational(i));
    return grid;
}

std::vector<CurvePoint> tau_curve(const Rational& h, const std::vector<Rational>& grid, const std::vector<long>& Ns,
                                  Mode mode) {
    for (const auto& v : grid) XYParams{Ns.empty() ? 2 : Ns.front(), h, v}.validate();
    return detail::parallel_map(grid.size(), [&](std::size_t i) {
        CurvePoint point;
        point.v = grid[i];
        point.p = p_of_v(h, grid[i]);
        const auto iv = v_interval(h);
        if (iv.lower < grid[i] && grid[i] < iv.upper) point.tau_analytic = tau_analytic(h, grid[i]);
        for (long N : Ns) {
            const XYParams params{N, h, grid[i]};
            point.tau.push_back(tau_empirical(params, mode));
            if (N <= kExactModeLimit) {
                const auto growth = euler_growth_xy(params);
                point.sigma_sign.emplace_back(growth.sign);
                point.sigma.push_back(growth.rate);
            } else {
                point.sigma_sign.emplace_back();
                point.sigma.emplace_back();
            }
        }
        return point;
    });
}

KinkReport kink_scan(const Rational& h, const std::vector<Rational>& grid, const std::vector<long>& Ns) {
    require_positive_field(h);
    if (grid.size() < 5) {
        throw DomainError("kink scan needs at least 5 grid points, got " + std::to_string(grid.size()));
    }
    const Rational spacing = grid[1] - grid[0];
    if (spacing.sign() <= 0) throw DomainError("grid must be increasing");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (grid[i] - grid[i - 1] != spacing) throw DomainError("grid spacing is not uniform");
    }
    for (const auto& v : grid) require_open_interval(h, v);

    KinkReport report;
    report.h = h;
    report.spacing = spacing;
    report.grid = grid;
    report.expected_jump = -1.0 / (h * h).to_double();

    const double dv = spacing.to_double();
    auto analytic = detail::parallel_map(grid.size(), [&](std::size_t i) { return tau_analytic(h, grid[i]); });
    report.analytic = locate_kink(std::move(analytic), dv, grid);

    for (long N : Ns) {
        auto tau = detail::parallel_map(grid.size(), [&](std::size_t i) {
            return tau_empirical(XYParams{N, h, grid[i]});
        });
        report.empirical.emplace_back(N, locate_kink(std::move(tau), dv, grid));
    }
    return report;
}

KinkProbe kink_probe(const Rational& h, const Rational& dv) {
    if (dv.sign() <= 0) throw DomainError("dv must be positive");
    auto tau = [&](long steps) { return tau_analytic(h, dv * Rational(steps)); };
    const double t0 = tau(0);
    const double tm1 = tau(-1);
    const double tm2 = tau(-2);
    const double tp1 = tau(1);
    const double tp2 = tau(2);
    const double step = dv.to_double();

    KinkProbe probe;
    const double d2_left = (t0 - 2 * tm1 + tm2) / (step * step);
    const double d2_right = (tp2 - 2 * tp1 + t0) / (step * step);
    probe.second_derivative_jump = d2_left - d2_right;
    const double slope_left = (3 * t0 - 4 * tm1 + tm2) / (2 * step);
    const double slope_right = (-3 * t0 + 4 * tp1 - tp2) / (2 * step);
    probe.slope_mismatch = std::fabs(slope_left - slope_right);
    return probe;
}

}  // namespace xy

SubsetCounts count_ckdk_xy_closed(long N, const Rational& h, const Rational& v) {
    const xy::XYParams params{N, h, v};
    if (N < 2) throw DomainError("N = " + std::to_string(N) + " must be at least 2");
    params.validate();
    if (!(h > Rational(1, N))) {
        throw DomainError("closed form needs h > 1/N (h = " + h.to_string() + ", 1/N = " +
                          Rational(1, N).to_string() + "); the pivot would be a 1/N leg");
    }
    const auto cut = xy::xy_cutoffs(params);
    SubsetCounts out;
    out.n = static_cast<std::size_t>(N + 2);
    out.c.assign(static_cast<std::size_t>(N + 1), BigInt(0));
    out.d.assign(static_cast<std::size_t>(N + 1), BigInt(0));
    BigInt binom = 1;  // C(N, k)
    for (long k = 0; k <= N; ++k) {
        if (k <= cut.c_max) out.c[static_cast<std::size_t>(k)] = binom;
        // d_{k+1} = C(N, k) when k <= d_max
        if (k <= cut.d_max && k + 1 <= N) out.d[static_cast<std::size_t>(k + 1)] = binom;
        if (k < N) {
            binom *= static_cast<unsigned long>(N - k);
            mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), static_cast<unsigned long>(k + 1));
        }
    }
    out.pivot = static_cast<std::size_t>(N);
    out.generic = xy::xy_is_generic(params);
    return out;
}

}  // namespace linkbetti
