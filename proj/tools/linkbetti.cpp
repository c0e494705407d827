// Command-line front end: betti, xy, tau-curve, kink, oracle-b0, oracle-enum, verify.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "linkbetti/betti.hpp"
#include "linkbetti/errors.hpp"
#include "linkbetti/oracle.hpp"
#include "linkbetti/verify.hpp"
#include "linkbetti/xy_model.hpp"

using nlohmann::ordered_json;
using namespace linkbetti;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

std::vector<long> parse_ns(const std::string& text) {
    std::vector<long> out;
    for (const auto& item : split(text, ',')) {
        try {
            std::size_t used = 0;
            const long value = std::stol(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(value);
        } catch (const std::logic_error&) {
            throw ParseError("--N: '" + item + "' is not an integer");
        }
    }
    return out;
}

Rational parse_rational(const std::string& flag, const std::string& text) {
    try {
        return Rational::parse(text);
    } catch (const ParseError& e) {
        throw ParseError(flag + ": " + e.what());
    }
}

LengthVector read_lengths(const std::string& lengths, const std::string& telescopic) {
    std::vector<QuadraticScalar> legs;
    try {
        for (const auto& item : split(lengths, ',')) legs.push_back(QuadraticScalar::parse(item));
        if (!telescopic.empty()) legs.push_back(QuadraticScalar::parse(telescopic));
    } catch (const ParseError& e) {
        throw ParseError(std::string("--lengths/--telescopic: ") + e.what());
    }
    return LengthVector(std::move(legs));
}

std::string fixed(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

std::string general(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

ordered_json strings(const std::vector<BigInt>& values) {
    auto out = ordered_json::array();
    for (const auto& x : values) out.push_back(x.get_str());
    return out;
}

// Table cells: text, number or empty.
using Cell = std::variant<std::monostate, std::string, double, long>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string render_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + table.columns[i];
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            if (const auto* s = std::get_if<std::string>(&row[i])) out += *s;
            if (const auto* d = std::get_if<double>(&row[i])) out += general(*d);
            if (const auto* l = std::get_if<long>(&row[i])) out += std::to_string(*l);
        }
        out += '\n';
    }
    return out;
}

ordered_json table_json(const Table& table) {
    auto out = ordered_json::array();
    for (const auto& row : table.rows) {
        ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) {
            const auto& name = table.columns[i];
            std::visit(
                [&](const auto& value) {
                    using T = std::decay_t<decltype(value)>;
                    if constexpr (std::is_same_v<T, std::monostate>) {
                        obj[name] = nullptr;
                    } else {
                        obj[name] = value;
                    }
                },
                row[i]);
        }
        out.push_back(std::move(obj));
    }
    return out;
}

Cell optional_cell(const std::optional<double>& x) {
    return x ? Cell(*x) : Cell();
}

struct Output {
    std::string format = "json";
    std::string path;

    void emit(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream file(path, std::ios::binary);
        if (!file) throw DomainError("--output: cannot open '" + path + "' for writing");
        file << text;
    }
    void emit(const ordered_json& doc) const { emit(doc.dump(2) + "\n"); }
};

void add_output(CLI::App* cmd, Output& out) {
    cmd->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--output,-o", out.path, "Write to this file instead of standard output");
}

xy::Mode parse_mode(const std::string& mode) {
    if (mode == "exact") return xy::Mode::Exact;
    if (mode == "logspace") return xy::Mode::Logspace;
    return xy::Mode::Auto;
}

const char* mode_name(xy::Mode mode) {
    switch (mode) {
        case xy::Mode::Exact: return "exact";
        case xy::Mode::Logspace: return "logspace";
        default: return "auto";
    }
}

Engine parse_engine(const std::string& engine) {
    if (engine == "enumeration") return Engine::Enumeration;
    if (engine == "dp") return Engine::DynamicProgramming;
    return Engine::Auto;
}

std::vector<Rational> grid_from(const std::string& from, const std::string& to, long steps) {
    return xy::uniform_grid(parse_rational("--v-from", from), parse_rational("--v-to", to), steps);
}

void run_betti(const std::string& lengths_text, const std::string& telescopic, const std::string& engine_name,
               bool with_alpha, const Output& out) {
    const auto lengths = read_lengths(lengths_text, telescopic);
    const auto engine = parse_engine(engine_name);
    const auto counts = count_ckdk(lengths, engine);
    auto profile = betti_profile(counts, lengths.size());
    if (lengths.size() > 3) profile.disconnected = is_disconnected(lengths).disconnected;
    std::optional<std::vector<BigInt>> alpha;
    if (with_alpha) alpha = count_alpha(lengths, engine);

    if (out.format == "csv") {
        Table table;
        table.columns = {"k", "b_k", "c_k", "d_k"};
        if (alpha) table.columns.push_back("alpha_k");
        for (std::size_t k = 0; k < profile.b.size(); ++k) {
            std::vector<Cell> row = {static_cast<long>(k), profile.b[k].get_str(), counts.c[k].get_str(),
                                     counts.d[k].get_str()};
            if (alpha) row.emplace_back((*alpha)[k].get_str());
            table.rows.push_back(std::move(row));
        }
        out.emit(render_csv(table));
        return;
    }
    ordered_json doc;
    doc["n"] = profile.n;
    doc["dimension"] = profile.dimension();
    doc["b"] = strings(profile.b);
    doc["total"] = profile.total.get_str();
    doc["euler"] = profile.euler.get_str();
    doc["euler_sign"] = profile.euler_sign();
    doc["euler_abs"] = profile.euler_abs().get_str();
    doc["generic"] = profile.generic;
    doc["disconnected"] = profile.disconnected ? ordered_json(*profile.disconnected) : ordered_json(nullptr);
    doc["lengths"] = lengths.to_string();
    doc["pivot"] = counts.pivot + 1;
    doc["c"] = strings(counts.c);
    doc["d"] = strings(counts.d);
    if (alpha) doc["alpha"] = strings(*alpha);
    out.emit(doc);
}

void run_xy(long N, const std::string& h_text, const std::string& v_text, const std::string& mode_text,
            bool with_profile, const Output& out) {
    const xy::XYParams params{N, parse_rational("--h", h_text), parse_rational("--v", v_text)};
    params.validate();
    const auto total = xy::total_betti_xy(params, parse_mode(mode_text));
    const auto cut = xy::xy_cutoffs(params);
    const auto iv = xy::v_interval(params.h);
    std::optional<double> analytic;
    if (iv.lower < params.v && params.v < iv.upper) analytic = xy::tau_analytic(params.h, params.v);
    std::optional<xy::EulerGrowth> growth;
    if (total.mode == xy::Mode::Exact) growth = xy::euler_growth_xy(params);

    std::vector<std::pair<std::string, Cell>> fields = {
        {"N", N},
        {"n", params.n()},
        {"h", params.h.to_string()},
        {"v", params.v.to_string()},
        {"r", xy::magnetization_radius(params.h, params.v).to_string()},
        {"p_v", fixed(xy::p_of_v(params.h, params.v).to_double(), 12)},
        {"generic", std::string(xy::xy_is_generic(params) ? "true" : "false")},
        {"c_max", cut.c_max},
        {"d_max", cut.d_max},
        {"mode", std::string(mode_name(total.mode))},
        {"b", total.exact ? Cell(total.exact->get_str()) : Cell()},
        {"ln_b", total.log_value},
        {"tau_empirical", total.log_value / static_cast<double>(params.n())},
        {"tau_analytic", optional_cell(analytic)},
        {"euler", growth ? Cell(growth->euler.get_str()) : Cell()},
        {"sigma_sign", growth ? Cell(static_cast<long>(growth->sign)) : Cell()},
        {"sigma", growth ? optional_cell(growth->rate) : Cell()},
    };
    Table table;
    table.rows.emplace_back();
    for (auto& [name, cell] : fields) {
        if (name == "generic" && out.format == "json") continue;
        table.columns.push_back(name);
        table.rows.back().push_back(cell);
    }
    if (out.format == "csv") {
        out.emit(render_csv(table));
        return;
    }
    ordered_json doc = table_json(table).front();
    doc["generic"] = xy::xy_is_generic(params);
    if (with_profile) {
        const auto profile = xy::xy_betti_profile(params);
        doc["betti"] = strings(profile.b);
    }
    out.emit(doc);
}

void run_tau_curve(const std::string& h_text, const std::string& from, const std::string& to, long steps,
                   const std::string& ns_text, const std::string& mode_text, const Output& out) {
    const Rational h = parse_rational("--h", h_text);
    const auto Ns = parse_ns(ns_text);
    const auto points = xy::tau_curve(h, grid_from(from, to, steps), Ns, parse_mode(mode_text));
    Table table;
    table.columns = {"v", "p_v", "tau_analytic"};
    for (long N : Ns) {
        const auto suffix = std::to_string(N);
        table.columns.push_back("tau_" + suffix);
        table.columns.push_back("sigma_sign_" + suffix);
        table.columns.push_back("sigma_" + suffix);
    }
    for (const auto& point : points) {
        std::vector<Cell> row = {point.v.to_decimal(12), fixed(point.p.to_double(), 12),
                                 optional_cell(point.tau_analytic)};
        for (std::size_t i = 0; i < Ns.size(); ++i) {
            row.emplace_back(point.tau[i]);
            row.push_back(point.sigma_sign[i] ? Cell(static_cast<long>(*point.sigma_sign[i])) : Cell());
            row.push_back(optional_cell(point.sigma[i]));
        }
        table.rows.push_back(std::move(row));
    }
    if (out.format == "csv") {
        out.emit(render_csv(table));
        return;
    }
    ordered_json doc;
    doc["h"] = h.to_string();
    doc["points"] = table_json(table);
    out.emit(doc);
}

void run_kink(const std::string& h_text, const std::string& from, const std::string& to, long steps,
              const std::string& ns_text, const std::string& probe_text, const Output& out) {
    const Rational h = parse_rational("--h", h_text);
    const auto Ns = ns_text.empty() ? std::vector<long>{} : parse_ns(ns_text);
    const auto report = xy::kink_scan(h, grid_from(from, to, steps), Ns);

    if (out.format == "csv") {
        Table table;
        table.columns = {"v", "tau_analytic", "d2_analytic", "jump_analytic"};
        for (long N : Ns) {
            for (const char* col : {"tau_", "d2_", "jump_"}) table.columns.push_back(col + std::to_string(N));
        }
        auto value = [](double x) { return std::isnan(x) ? Cell() : Cell(x); };
        for (std::size_t i = 0; i < report.grid.size(); ++i) {
            std::vector<Cell> row = {report.grid[i].to_decimal(12), report.analytic.tau[i],
                                     value(report.analytic.second_difference[i]), value(report.analytic.jump[i])};
            for (const auto& [N, curve] : report.empirical) {
                row.emplace_back(curve.tau[i]);
                row.push_back(value(curve.second_difference[i]));
                row.push_back(value(curve.jump[i]));
            }
            table.rows.push_back(std::move(row));
        }
        out.emit(render_csv(table));
        return;
    }
    ordered_json doc;
    doc["h"] = h.to_string();
    doc["spacing"] = report.spacing.to_string();
    doc["points"] = report.grid.size();
    doc["expected_jump"] = report.expected_jump;
    doc["analytic"] = {{"location_v", report.analytic.location_v}, {"jump", report.analytic.jump_at_location}};
    doc["empirical"] = ordered_json::array();
    for (const auto& [N, curve] : report.empirical) {
        doc["empirical"].push_back({{"N", N}, {"location_v", curve.location_v}, {"jump", curve.jump_at_location}});
    }
    if (!probe_text.empty()) {
        const auto dv = parse_rational("--probe-dv", probe_text);
        const auto probe = xy::kink_probe(h, dv);
        doc["probe"] = {{"dv", dv.to_string()},
                        {"second_derivative_jump", probe.second_derivative_jump},
                        {"slope_mismatch", probe.slope_mismatch}};
    }
    out.emit(doc);
}

void run_oracle_b0(const std::string& lengths_text, const std::string& telescopic, long resolution, int rounds,
                   const std::optional<double>& margin, const Output& out) {
    const auto lengths = read_lengths(lengths_text, telescopic);
    const auto grid = oracle::grid_components(lengths, {resolution, rounds, margin});
    const auto theorem = betti_profile(lengths).b[0];
    Table table;
    table.columns = {"resolution", "members", "components"};
    for (const auto& run : grid.runs) table.rows.push_back({run.resolution, run.members, run.components});
    if (out.format == "csv") {
        out.emit(render_csv(table));
        return;
    }
    ordered_json doc;
    doc["n"] = lengths.size();
    doc["lengths"] = lengths.to_string();
    doc["b0"] = grid.b0;
    doc["theorem_b0"] = theorem.get_str();
    doc["agree"] = BigInt(grid.b0) == theorem;
    doc["runs"] = table_json(table);
    out.emit(doc);
}

void run_oracle_enum(const std::string& lengths_text, const std::string& telescopic, const Output& out) {
    const auto lengths = read_lengths(lengths_text, telescopic);
    if (out.format == "csv") {
        std::ostringstream text;
        oracle::write_subsets_csv(lengths, text);
        out.emit(text.str());
        return;
    }
    ordered_json doc;
    doc["n"] = lengths.size();
    doc["lengths"] = lengths.to_string();
    doc["half_perimeter"] = half_perimeter(lengths).to_string();
    doc["rows"] = ordered_json::array();
    oracle::for_each_subset(lengths, [&](const oracle::SubsetRow& row) {
        doc["rows"].push_back({{"mask", row.mask}, {"sum", row.sum.to_string()}, {"class", to_string(row.cls)}});
    });
    out.emit(doc);
}

int run_verify(const verify::Options& options, const std::string& suite, const Output& out) {
    std::vector<verify::SuiteResult> results;
    if (suite.empty()) {
        results = verify::run_all(options);
    } else {
        results.push_back(verify::run_suite(suite, options));
    }
    std::ostringstream text;
    verify::print_report(results, options, text);
    out.emit(text.str());
    for (const auto& r : results) {
        if (!r.pass) return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Betti numbers of planar linkages with a telescopic leg, and the mean-field XY model"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);

    Output out;
    std::string lengths;
    std::string telescopic;

    auto* betti = app.add_subcommand("betti", "Betti profile of a length vector");
    std::string engine = "auto";
    bool with_alpha = false;
    betti->add_option("--lengths", lengths, "Comma-separated rational legs, telescopic last")->required();
    betti->add_option("--telescopic", telescopic, "Telescopic leg appended to --lengths (e.g. sqrt:2 or 1/3)");
    betti->add_option("--engine", engine, "Counting engine")->check(CLI::IsMember({"auto", "enumeration", "dp"}));
    betti->add_flag("--alpha", with_alpha, "Also report alpha_k");
    add_output(betti, out);

    long N = 2;
    std::string h = "1";
    std::string v = "0";
    std::string mode = "auto";
    auto* xy_cmd = app.add_subcommand("xy", "Total Betti number of the XY sub-energy manifold");
    bool with_profile = false;
    xy_cmd->add_option("--N", N, "Number of rotators (>= 2)")->required();
    xy_cmd->add_option("--h", h, "External field (rational, > 0)")->required();
    xy_cmd->add_option("--v", v, "Energy density (rational, in [a_h, b_h])")->required();
    xy_cmd->add_option("--mode", mode, "Evaluation mode")->check(CLI::IsMember({"auto", "exact", "logspace"}));
    xy_cmd->add_flag("--profile", with_profile, "Include the full Betti profile");
    add_output(xy_cmd, out);

    std::string from;
    std::string to;
    long steps = 0;
    std::string ns;
    auto* curve = app.add_subcommand("tau-curve", "tau(v) curves for several N");
    curve->add_option("--h", h, "External field")->required();
    curve->add_option("--v-from", from, "First grid value")->required();
    curve->add_option("--v-to", to, "Last grid value")->required();
    curve->add_option("--steps", steps, "Number of grid points")->required();
    curve->add_option("--N", ns, "Comma-separated rotator counts")->required();
    curve->add_option("--mode", mode, "Evaluation mode")->check(CLI::IsMember({"auto", "exact", "logspace"}));
    add_output(curve, out);

    std::string probe;
    auto* kink = app.add_subcommand("kink", "Second-difference scan for the kink of tau at v = 0");
    kink->add_option("--h", h, "External field")->required();
    kink->add_option("--v-from", from, "First grid value")->required();
    kink->add_option("--v-to", to, "Last grid value")->required();
    kink->add_option("--steps", steps, "Number of grid points (>= 5)")->required();
    kink->add_option("--N", ns, "Comma-separated rotator counts for empirical curves");
    kink->add_option("--probe-dv", probe, "Also probe tau around v = 0 with this spacing");
    add_output(kink, out);

    long resolution = 32;
    int rounds = 1;
    std::optional<double> margin;
    auto* b0 = app.add_subcommand("oracle-b0", "Grid estimate of the number of components");
    b0->add_option("--lengths", lengths, "Comma-separated rational legs, telescopic last")->required();
    b0->add_option("--telescopic", telescopic, "Telescopic leg appended to --lengths");
    b0->add_option("--resolution", resolution, "Cells per axis (>= 16)");
    b0->add_option("--rounds", rounds, "Refinement rounds (>= 1)");
    b0->add_option("--margin", margin, "Smallest admissible |signed sum| (default 2 pi max(l) / resolution)");
    add_output(b0, out);

    auto* enum_cmd = app.add_subcommand("oracle-enum", "Classify every subset as short, median or long");
    enum_cmd->add_option("--lengths", lengths, "Comma-separated rational legs, telescopic last")->required();
    enum_cmd->add_option("--telescopic", telescopic, "Telescopic leg appended to --lengths");
    add_output(enum_cmd, out);

    verify::Options verify_options;
    std::string suite;
    long trials = 0;
    auto* verify_cmd = app.add_subcommand("verify", "Run the verification suites");
    verify_cmd->add_flag("--quick", verify_options.quick, "Reduced sizes");
    verify_cmd->add_option("--seed", verify_options.seed, "Seed of the randomized suites");
    verify_cmd->add_option("--suite", suite, "Run a single suite")->check(CLI::IsMember(verify::suite_names()));
    verify_cmd->add_option("--trials", trials, "Trial count for the randomized suites")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--output,-o", out.path, "Write the report to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*betti) run_betti(lengths, telescopic, engine, with_alpha, out);
        if (*xy_cmd) run_xy(N, h, v, mode, with_profile, out);
        if (*curve) run_tau_curve(h, from, to, steps, ns, mode, out);
        if (*kink) run_kink(h, from, to, steps, ns, probe, out);
        if (*b0) run_oracle_b0(lengths, telescopic, resolution, rounds, margin, out);
        if (*enum_cmd) run_oracle_enum(lengths, telescopic, out);
        if (*verify_cmd) {
            if (trials > 0) verify_options.trials = trials;
            return run_verify(verify_options, suite, out);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
