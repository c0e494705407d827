#include "linkbetti/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "linkbetti/betti.hpp"
#include "linkbetti/errors.hpp"
#include "linkbetti/oracle.hpp"
#include "linkbetti/xy_model.hpp"

namespace linkbetti::verify {

namespace {

using Decimal50 = boost::multiprecision::cpp_dec_float_50;

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : engine_(seed) {}

    long between(long lo, long hi) {
        return lo + static_cast<long>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Rational leg(long max_numerator) {
        static constexpr long kDenominators[] = {1, 2, 3, 4, 6, 12};
        return {BigInt(between(1, max_numerator)), BigInt(kDenominators[between(0, 5)])};
    }

private:
    std::mt19937_64 engine_;
};

std::uint64_t seed_for(const Options& options, int criterion) {
    return options.seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(criterion));
}

long trial_count(const Options& options, long full, long quick) {
    return options.trials.value_or(options.quick ? quick : full);
}

SuiteResult make_result(std::string name, int criterion) {
    SuiteResult result;
    result.name = std::move(name);
    result.criterion = criterion;
    return result;
}

void record(SuiteResult& result, bool ok, std::string inputs, std::string detail) {
    ++result.total;
    if (ok) {
        ++result.passed;
    } else {
        result.failures.push_back({std::move(inputs), std::move(detail)});
    }
}

SuiteResult& finish(SuiteResult& result) {
    result.pass = result.total > 0 && result.passed == result.total;
    return result;
}

std::string join(const std::vector<BigInt>& values) {
    std::string out = "(";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += values[i].get_str();
    }
    return out + ")";
}

std::string counts_text(const SubsetCounts& counts) {
    return "c=" + join(counts.c) + " d=" + join(counts.d) + " pivot=" + std::to_string(counts.pivot) +
           " generic=" + (counts.generic ? "true" : "false");
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

BigInt binomial(long n, long k) {
    BigInt out;
    if (k < 0 || k > n) return 0;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

LengthVector from_rationals(const std::vector<Rational>& legs) {
    return LengthVector::of(legs);
}

// Empty shape space: the largest fixed leg exceeds all the others together.
bool empty_shape_space(const LengthVector& lengths) {
    QuadraticScalar total;
    for (const auto& x : lengths.lengths()) total += x;
    return lengths[max_fixed_index(lengths)] * Rational(2) > total;
}

LengthVector draw_generic(Sampler& sampler, long n, long max_numerator) {
    for (;;) {
        std::vector<Rational> legs;
        for (long i = 0; i < n; ++i) legs.push_back(sampler.leg(max_numerator));
        auto lengths = from_rationals(legs);
        if (is_generic(lengths)) return lengths;
    }
}

// Three dominant fixed legs plus small ones, the shape that disconnects.
std::vector<Rational> draw_three_big(Sampler& sampler, long n) {
    std::vector<Rational> legs;
    for (long i = 0; i < n - 1; ++i) {
        legs.push_back(i < 3 ? Rational(sampler.between(40, 60))
                             : sampler.leg(10));
    }
    legs.push_back(sampler.leg(20));
    return legs;
}

SuiteResult engine_equivalence(const Options& options) {
    SuiteResult result = make_result("engine-equivalence", 1);
    Sampler sampler(seed_for(options, 1));
    const long trials = trial_count(options, 200, 50);
    for (long t = 0; t < trials; ++t) {
        const auto lengths = draw_generic(sampler, sampler.between(3, 16), 40);
        const auto dp = count_ckdk_dp(lengths);
        const auto en = count_ckdk_enum(lengths);
        record(result, dp == en, "lengths=" + lengths.to_string(),
               "dp " + counts_text(dp) + " | enumeration " + counts_text(en));
    }
    return finish(result);
}

SuiteResult alpha_identity(const Options& options) {
    SuiteResult result = make_result("alpha-identity", 2);
    Sampler sampler(seed_for(options, 2));
    const long trials = trial_count(options, 200, 50);
    while (result.total < trials) {
        const long n = sampler.between(4, 12);
        std::vector<Rational> fixed;
        for (long i = 0; i < n - 1; ++i) fixed.push_back(sampler.leg(30));
        std::sort(fixed.begin(), fixed.end());
        const Rational top = fixed.back();
        Rational tel = sampler.leg(30);
        if (!(tel < top)) continue;
        auto legs = fixed;
        legs.push_back(tel);
        const auto lengths = from_rationals(legs);
        if (!is_generic(lengths)) continue;

        std::vector<Rational> merged(fixed.begin(), fixed.end() - 1);
        auto split = merged;
        merged.push_back(top + tel);
        split.push_back(top - tel);
        const auto counts = count_ckdk_enum(lengths);
        const auto alpha_sum = count_alpha(from_rationals(merged));
        const auto alpha_diff = count_alpha(from_rationals(split));

        bool ok = true;
        for (long k = 0; k <= n - 2; ++k) {
            const auto uk = static_cast<std::size_t>(k);
            const BigInt expect_c = uk < alpha_diff.size() ? alpha_diff[uk] : BigInt(0);
            const BigInt expect_d = k >= 1 && uk - 1 < alpha_sum.size() ? alpha_sum[uk - 1] : BigInt(0);
            ok = ok && counts.c[uk] == expect_c && counts.d[uk] == expect_d;
        }
        record(result, ok, "lengths=" + lengths.to_string(),
               counts_text(counts) + " | alpha(L)=" + join(alpha_sum) + " alpha(L')=" + join(alpha_diff));
    }
    return finish(result);
}

SuiteResult corollary_disconnection(const Options& options) {
    SuiteResult result = make_result("corollary-disconnection", 3);
    Sampler sampler(seed_for(options, 3));
    const long trials = trial_count(options, 200, 50);
    long disconnected = 0;
    while (result.total < trials) {
        const long n = sampler.between(4, 10);
        std::vector<Rational> legs;
        if (result.total % 2 == 1) {
            legs = draw_three_big(sampler, n);
        } else {
            for (long i = 0; i < n; ++i) legs.push_back(sampler.leg(30));
        }
        const auto lengths = from_rationals(legs);
        if (!is_generic(lengths) || empty_shape_space(lengths)) continue;

        const auto profile = betti_profile(lengths);
        const bool split = is_disconnected(lengths).disconnected;
        const BigInt& b0 = profile.b[0];
        bool ok = (b0 == 1 || b0 == 2) && (split == (b0 == 2));
        if (split) {
            ++disconnected;
            for (long k = 0; k <= n - 2; ++k) ok = ok && profile.b[static_cast<std::size_t>(k)] == 2 * binomial(n - 4, k);
        }
        record(result, ok, "lengths=" + lengths.to_string(),
               "b=" + join(profile.b) + " criterion=" + (split ? "disconnected" : "connected"));
    }
    result.notes.push_back("disconnected cases: " + std::to_string(disconnected) + "/" + std::to_string(result.total));
    return finish(result);
}

long grid_base_resolution(long n) {
    return n == 4 ? 64 : (n == 5 ? 32 : 24);
}

SuiteResult grid_oracle(const Options& options) {
    SuiteResult result = make_result("grid-oracle", 4);
    Sampler sampler(seed_for(options, 4));
    const long trials = trial_count(options, 50, 12);
    long base_inconclusive = 0;
    long refined_inconclusive = 0;
    long disconnected = 0;
    long attempts = 0;
    while (attempts < trials) {
        const long n = sampler.between(4, 6);
        std::vector<Rational> legs;
        if (attempts % 3 == 2) {
            legs = draw_three_big(sampler, n);
        } else {
            for (long i = 0; i < n; ++i) legs.push_back(sampler.leg(20));
        }
        // telescopic leg between a third of the longest fixed leg and all of it
        // (at most two thirds for the three-big shape, which then often splits)
        const Rational longest = *std::max_element(legs.begin(), legs.end() - 1);
        legs.back() = longest * Rational(sampler.between(4, attempts % 3 == 2 ? 8 : 12), 12);
        const auto lengths = from_rationals(legs);
        if (!is_generic(lengths) || empty_shape_space(lengths)) continue;
        const double s_star = half_perimeter(lengths).to_double();
        const double margin = min_abs_signed_sum(lengths.lengths()).to_double();
        if (margin < 0.05 * s_star) continue;
        ++attempts;

        const auto expected = betti_profile(lengths).b[0];
        if (expected == 2) ++disconnected;
        const oracle::GridConfig cfg{grid_base_resolution(n), 2, 0.05 * s_star};
        try {
            const auto grid = oracle::grid_components(lengths, cfg);
            if (grid.runs.size() > 2) ++base_inconclusive;
            record(result, BigInt(grid.b0) == expected, "lengths=" + lengths.to_string(),
                   "grid b0=" + std::to_string(grid.b0) + " theorem b0=" + expected.get_str());
        } catch (const InconclusiveError& e) {
            ++base_inconclusive;
            ++refined_inconclusive;
            result.failures.push_back({"lengths=" + lengths.to_string(), e.what()});
        }
    }
    result.notes.push_back("inconclusive at base resolution: " + std::to_string(base_inconclusive) + "/" +
                           std::to_string(attempts) + ", after one refinement: " +
                           std::to_string(refined_inconclusive) + "/" + std::to_string(attempts));
    result.notes.push_back("theorem b0 = 2 cases: " + std::to_string(disconnected));
    finish(result);
    result.pass = result.pass && refined_inconclusive == 0 && base_inconclusive * 10 < attempts;
    return result;
}

SuiteResult xy_closed_form(const Options& options) {
    SuiteResult result = make_result("xy-closed-form", 5);
    const long max_n = options.quick ? 12 : 20;
    const std::vector<std::pair<Rational, std::vector<Rational>>> cases = {
        {Rational(1, 2),
         {Rational(-31, 250), Rational(-1, 10), Rational(-1, 16), Rational(-1, 50), Rational(0), Rational(1, 10),
          Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(99, 100)}},
        {Rational(2),
         {Rational(-149, 100), Rational(-1), Rational(-1, 2), Rational(-1, 10), Rational(0), Rational(1, 3),
          Rational(1), Rational(3, 2), Rational(2), Rational(249, 100)}},
    };
    for (const auto& [h, vs] : cases) {
        for (const auto& v : vs) {
            for (long N = 2; N <= max_n; ++N) {
                if (!(h > Rational(1, N))) continue;
                const auto closed = count_ckdk_xy_closed(N, h, v);
                const auto en = count_ckdk(xy::xy_length_vector({N, h, v}), Engine::Enumeration);
                record(result, closed == en,
                       "N=" + std::to_string(N) + " h=" + h.to_string() + " v=" + v.to_string(),
                       "closed " + counts_text(closed) + " | enumeration " + counts_text(en));
            }
        }
    }
    return finish(result);
}

SuiteResult tau_theorem(const Options&) {
    SuiteResult result = make_result("tau-theorem", 6);
    const double at_zero = xy::tau_analytic(2, 0);
    record(result, std::fabs(at_zero - std::numbers::ln2) <= 4 * std::numeric_limits<double>::epsilon(),
           "h=2 v=0", "tau=" + sci(at_zero) + " ln2 difference " + sci(at_zero - std::numbers::ln2));

    const auto reference = entropy_reference(2, -1);
    const double tau = xy::tau_analytic(2, -1);
    const double gap = std::fabs(tau - std::stod(reference));
    record(result, gap <= 1e-6, "h=2 v=-1", "tau=" + sci(tau) + " reference=" + reference + " gap " + sci(gap));

    const double p = xy::p_of_v(2, -1).to_double();
    const double p_expected = (std::numbers::sqrt2 - 1) / 2;
    record(result, std::fabs(p - p_expected) <= 1e-15, "h=2 v=-1", "p=" + sci(p));

    result.notes.push_back("tau(h=2, v=-1) reference " + reference.substr(0, 14) + ", library gap " + sci(gap) +
                           "; the constant 0.5082301 differs from the reference by " +
                           sci(std::fabs(std::stod(reference) - 0.5082301)));
    return finish(result);
}

SuiteResult convergence(const Options& options) {
    SuiteResult result = make_result("convergence", 7);
    const std::vector<long> ladder =
        options.quick ? std::vector<long>{128, 256, 512, 1024} : std::vector<long>{512, 1024, 2048, 4096};
    const double tolerance = options.quick ? 0.04 : 0.01;
    for (const auto& v : {Rational(-1), Rational(-1, 2), Rational(1, 2), Rational(3, 2)}) {
        const double target = xy::tau_analytic(2, v);
        std::vector<double> errors;
        for (long N : ladder) errors.push_back(std::fabs(xy::tau_empirical({N, 2, v}) - target));
        bool ok = errors.back() < tolerance;
        std::string text;
        for (std::size_t i = 0; i < errors.size(); ++i) {
            if (i) {
                ok = ok && errors[i] < errors[i - 1];
                text += ' ';
            }
            text += sci(errors[i]);
        }
        record(result, ok, "h=2 v=" + v.to_string(), "errors " + text);
    }
    const xy::XYParams dual{1000, 2, -1};
    const double exact = xy::total_betti_xy(dual, xy::Mode::Exact).log_value;
    const double logspace = xy::total_betti_xy(dual, xy::Mode::Logspace).log_value;
    record(result, std::fabs(exact - logspace) <= 1e-9 * std::fabs(exact), "N=1000 h=2 v=-1",
           "exact ln b " + sci(exact) + " logspace " + sci(logspace));
    return finish(result);
}

SuiteResult kink(const Options&) {
    SuiteResult result = make_result("kink", 8);
    for (const auto& h : {Rational(1), Rational(2)}) {
        const double expected = 1.0 / (h * h).to_double();
        const auto fine = xy::kink_probe(h, Rational(1, 1000));
        const auto coarse = xy::kink_probe(h, Rational(1, 100));
        const double rel = std::fabs(std::fabs(fine.second_derivative_jump) - expected) / expected;
        record(result, rel < 0.1, "probe h=" + h.to_string() + " dv=1/1000",
               "jump " + sci(fine.second_derivative_jump) + " relative error " + sci(rel));
        record(result, fine.slope_mismatch < 1e-4 && fine.slope_mismatch < coarse.slope_mismatch,
               "probe h=" + h.to_string() + " dv=1/1000,1/100",
               "slope mismatch " + sci(fine.slope_mismatch) + " (dv=1/100: " + sci(coarse.slope_mismatch) + ")");
    }
    const std::vector<std::tuple<Rational, Rational, Rational>> scans = {
        {Rational(2), Rational(-7, 5), Rational(12, 5)},
        {Rational(1), Rational(-2, 5), Rational(7, 5)},
    };
    for (const auto& [h, from, to] : scans) {
        const Rational step(1, 20);
        const long steps = ((to - from) / step).floor().get_si() + 1;
        const auto report = xy::kink_scan(h, xy::uniform_grid(from, to, steps), {});
        const double expected = 1.0 / (h * h).to_double();
        const double rel = std::fabs(std::fabs(report.analytic.jump_at_location) - expected) / expected;
        const bool at_zero = std::fabs(report.analytic.location_v) < step.to_double() / 2;
        record(result, at_zero && rel < 0.1,
               "scan h=" + h.to_string() + " grid [" + from.to_string() + ", " + to.to_string() + "] dv=1/20",
               "location v=" + sci(report.analytic.location_v) + " jump " + sci(report.analytic.jump_at_location));
    }
    return finish(result);
}

SuiteResult strong_field(const Options& options) {
    SuiteResult result = make_result("strong-field", 9);
    const Rational h(2);
    const std::vector<long> Ns = options.quick ? std::vector<long>{2, 3, 5, 10, 25, 50, 100}
                                               : std::vector<long>{2, 3, 5, 10, 25, 50, 100, 250, 500};
    const auto grid = xy::uniform_grid(Rational(-3, 2), Rational(5, 2), 41);
    for (long N : Ns) {
        for (const auto& v : grid) {
            const auto counts = count_ckdk_xy_closed(N, h, v);
            const bool ok = std::all_of(counts.d.begin(), counts.d.end(), [](const BigInt& x) { return x == 0; });
            record(result, ok, "N=" + std::to_string(N) + " h=2 v=" + v.to_string(), "d=" + join(counts.d));
        }
    }
    // Rational telescopic lengths run through the generic subset-sum engine.
    for (long N : {2L, 3L, 5L, 10L, 25L, 50L}) {
        for (const auto& r : {Rational(1), Rational(5, 4), Rational(3, 2), Rational(2), Rational(5, 2), Rational(3)}) {
            const Rational v = (r * r - Rational(4)) / Rational(2);
            const auto engine = count_ckdk(xy::xy_length_vector({N, h, v}), Engine::DynamicProgramming);
            const auto closed = count_ckdk_xy_closed(N, h, v);
            const bool ok = engine == closed &&
                            std::all_of(engine.d.begin(), engine.d.end(), [](const BigInt& x) { return x == 0; });
            record(result, ok, "N=" + std::to_string(N) + " h=2 v=" + v.to_string() + " (dp)",
                   "dp " + counts_text(engine) + " | closed " + counts_text(closed));
        }
    }
    return finish(result);
}

SuiteResult sandwich(const Options& options) {
    SuiteResult result = make_result("sandwich", 10);
    const std::vector<long> Ns = options.quick ? std::vector<long>{100, 500} : std::vector<long>{100, 500, 1000};
    const std::vector<Rational> vs = {Rational(-7, 5), Rational(-6, 5), Rational(-1), Rational(-1, 2),
                                      Rational(-1, 10), Rational(0), Rational(1, 2), Rational(1),
                                      Rational(3, 2), Rational(12, 5)};
    for (long N : Ns) {
        const long n = N + 2;
        for (const auto& v : vs) {
            const xy::XYParams params{N, 2, v};
            const BigInt b = *xy::total_betti_xy(params, xy::Mode::Exact).exact;
            const std::string inputs = "N=" + std::to_string(N) + " h=2 v=" + v.to_string();
            if (v.sign() <= 0) {
                const long K = (xy::p_of_v(2, v) * Rational(N)).floor().get_si();
                const BigInt central = binomial(N, K);
                record(result, central < b && b < n * central, inputs + " (v<=0)",
                       "floor(p(n-2))=" + std::to_string(K) + " ln b=" + sci(log_big(b)) + " ln C=" +
                           sci(log_big(central)));
            }
            if (v.sign() >= 0) {
                BigInt lower;
                BigInt upper;
                mpz_ui_pow_ui(lower.get_mpz_t(), 2, static_cast<unsigned long>(n - 3));
                mpz_ui_pow_ui(upper.get_mpz_t(), 2, static_cast<unsigned long>(n - 1));
                record(result, lower <= b && b <= upper, inputs + " (v>=0)", "ln b=" + sci(log_big(b)));
            }
        }
    }
    return finish(result);
}

SuiteResult stabilization(const Options& options) {
    SuiteResult result = make_result("stabilization", 11);
    Sampler sampler(seed_for(options, 11));
    const long trials = trial_count(options, 50, 20);
    while (result.total < trials) {
        const long fixed_count = sampler.between(3, 10);
        std::vector<QuadraticScalar> fixed;
        for (long i = 0; i < fixed_count; ++i) fixed.emplace_back(sampler.leg(30));
        const auto bound = min_abs_signed_sum(fixed);
        if (bound.sign() == 0) continue;
        QuadraticScalar longest;
        QuadraticScalar total;
        for (const auto& x : fixed) {
            total += x;
            if (x > longest) longest = x;
        }
        if (longest * Rational(2) >= total) continue;

        long a = sampler.between(51, 99);
        long b = sampler.between(2, 49);
        // one quadratic candidate keeps the irrational comparison path in play
        const std::vector<QuadraticScalar> candidates = {
            bound * Rational(a, 100), bound * Rational(b, 100),
            QuadraticScalar(Rational(0), bound.rational_part() / Rational(3), Rational(2))};
        std::string inputs = "fixed=";
        for (std::size_t i = 0; i < fixed.size(); ++i) inputs += (i ? "," : "") + fixed[i].to_string();
        inputs += " telescopic=";
        for (std::size_t i = 0; i < candidates.size(); ++i) inputs += (i ? "," : "") + candidates[i].to_string();
        const bool ok = small_leg_stability(fixed, candidates);
        record(result, ok, inputs, "profiles differ");
    }
    return finish(result);
}

using SuiteFn = SuiteResult (*)(const Options&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> suites = {
        {"engine-equivalence", engine_equivalence},
        {"alpha-identity", alpha_identity},
        {"corollary-disconnection", corollary_disconnection},
        {"grid-oracle", grid_oracle},
        {"xy-closed-form", xy_closed_form},
        {"tau-theorem", tau_theorem},
        {"convergence", convergence},
        {"kink", kink},
        {"strong-field", strong_field},
        {"sandwich", sandwich},
        {"stabilization", stabilization},
    };
    return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& entry : registry()) out.push_back(entry.first);
        return out;
    }();
    return names;
}

SuiteResult run_suite(const std::string& name, const Options& options) {
    for (const auto& [suite, fn] : registry()) {
        if (suite == name) return fn(options);
    }
    std::string known;
    for (const auto& s : suite_names()) known += (known.empty() ? "" : ", ") + s;
    throw DomainError("unknown suite '" + name + "' (known: " + known + ")");
}

std::vector<SuiteResult> run_all(const Options& options) {
    std::vector<SuiteResult> out;
    for (const auto& [suite, fn] : registry()) out.push_back(fn(options));
    return out;
}

void print_report(const std::vector<SuiteResult>& results, const Options& options, std::ostream& out) {
    out << "seed " << options.seed << (options.quick ? " (quick)" : "") << '\n';
    char line[160];
    std::snprintf(line, sizeof line, "%-9s  %-24s  %-6s  %s\n", "criterion", "suite", "result", "passed");
    out << line;
    bool all = true;
    for (const auto& r : results) {
        std::snprintf(line, sizeof line, "%-9d  %-24s  %-6s  %ld/%ld\n", r.criterion, r.name.c_str(),
                      r.pass ? "PASS" : "FAIL", r.passed, r.total);
        out << line;
        all = all && r.pass;
    }
    for (const auto& r : results) {
        for (const auto& note : r.notes) out << "note [" << r.name << "] " << note << '\n';
    }
    for (const auto& r : results) {
        for (const auto& f : r.failures) {
            out << "failure [" << r.name << "] " << f.inputs << '\n' << "    " << f.detail << '\n';
        }
    }
    out << "overall " << (all ? "PASS" : "FAIL") << '\n';
}

std::string entropy_reference(const Rational& h, const Rational& v, int digits) {
    auto to_dec = [](const Rational& x) {
        return Decimal50(x.numerator().get_str()) / Decimal50(x.denominator().get_str());
    };
    const Decimal50 hh = to_dec(h);
    const Decimal50 radicand = 2 * to_dec(v) + hh * hh;
    if (radicand < 0) throw DomainError("2v + h^2 is negative");
    const Decimal50 p = (sqrt(radicand) - hh + 1) / 2;
    if (p <= 0 || p >= 1) throw DomainError("p outside (0, 1)");
    const Decimal50 entropy = -p * log(p) - (1 - p) * log(1 - p);
    return entropy.str(digits, std::ios_base::fixed);
}

}  // namespace linkbetti::verify
