#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#ifndef LINKBETTI_CLI
#error "LINKBETTI_CLI must point at the command-line binary"
#endif

using nlohmann::json;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

// stdout only, or stdout followed by stderr when `merge` is set
Run run(const std::string& args, bool merge = false) {
    const std::string command = std::string(LINKBETTI_CLI) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
    Run result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, got);
    const int raw = pclose(pipe);
    result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return result;
}

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("betti subcommand") {
    const auto r = run("betti --lengths 1,1,1,2");
    REQUIRE(r.status == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["n"] == 4);
    CHECK(doc["b"] == json::array({"1", "2", "0"}));
    CHECK(doc["total"] == "3");
    CHECK(doc["euler"] == "-1");
    CHECK(doc["generic"] == true);
    CHECK(doc["disconnected"] == false);

    const auto split = json::parse(run("betti --lengths 1,1,5,5,5,1/2 --engine enumeration").out);
    CHECK(split["b"] == json::array({"2", "4", "2", "0", "0"}));
    CHECK(split["disconnected"] == true);

    const auto alpha = json::parse(run("betti --lengths 1,1,1,1/2 --alpha").out);
    CHECK(alpha["alpha"] == json::array({"1", "3", "0"}));

    const auto quad = json::parse(run("betti --lengths 1,1,1 --telescopic sqrt:1/8").out);
    CHECK(quad["lengths"] == "1,1,1,sqrt(1/8)");
    CHECK(quad["b"] == json::array({"2", "0", "0"}));

    const auto csv = run("betti --lengths 1,1,1,1/2 --format csv");
    CHECK(csv.out == "k,b_k,c_k,d_k\n0,2,1,0\n1,0,0,1\n2,0,0,0\n");
}

TEST_CASE("xy subcommand") {
    const auto r = run("xy --N 4 --h 2 --v 0 --mode exact");
    REQUIRE(r.status == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["b"] == "11");
    CHECK(doc["tau_empirical"].get<double>() == doctest::Approx(std::log(11.0) / 6));
    CHECK(doc["euler"] == "3");
    CHECK(doc["generic"] == false);
    CHECK(doc["p_v"] == "0.500000000000");

    const auto big = json::parse(run("xy --N 1000000 --h 2 --v -1 --mode logspace").out);
    CHECK(big["b"].is_null());
    CHECK(big["tau_empirical"].get<double>() == doctest::Approx(0.5100980575778).epsilon(1e-4));

    const auto decimal = json::parse(run("xy --N 10 --h 0.5 --v -0.0625").out);
    CHECK(decimal["v"] == "-1/16");
}

TEST_CASE("tau-curve rows and columns") {
    const auto r = run("tau-curve --h 2 --v-from -1.4 --v-to 2.4 --steps 77 --N 256,1024 --format csv");
    REQUIRE(r.status == 0);
    CHECK(count_lines(r.out) == 78);
    CHECK(r.out.rfind("v,p_v,tau_analytic,tau_256,sigma_sign_256,sigma_256,tau_1024,sigma_sign_1024,sigma_1024\n", 0) == 0);
    CHECK(r.out.find("\n-1.400000000000,") != std::string::npos);
    CHECK(r.out.find("\n0.000000000000,0.500000000000,0.693147180559945,") != std::string::npos);
    const auto again = run("tau-curve --h 2 --v-from -1.4 --v-to 2.4 --steps 77 --N 256,1024 --format csv");
    CHECK(again.out == r.out);

    const auto doc = json::parse(run("tau-curve --h 2 --v-from -1 --v-to 1 --steps 5 --N 64").out);
    CHECK(doc["points"].size() == 5);
    CHECK(doc["points"][2]["v"] == "0.000000000000");
}

TEST_CASE("kink subcommand") {
    const auto doc = json::parse(run("kink --h 2 --v-from -1.4 --v-to 2.4 --steps 77 --N 512 --probe-dv 1/1000").out);
    CHECK(std::fabs(doc["analytic"]["location_v"].get<double>()) < 0.025);
    CHECK(doc["analytic"]["jump"].get<double>() == doctest::Approx(-0.25).epsilon(0.1));
    CHECK(doc["expected_jump"].get<double>() == doctest::Approx(-0.25));
    CHECK(doc["empirical"][0]["N"] == 512);
    CHECK(doc["probe"]["slope_mismatch"].get<double>() < 1e-4);
    const auto csv = run("kink --h 1 --v-from -0.4 --v-to 1.4 --steps 37 --format csv");
    CHECK(count_lines(csv.out) == 38);
}

TEST_CASE("oracle subcommands") {
    const auto b0 = json::parse(run("oracle-b0 --lengths 1,1,1,1/2 --resolution 64 --rounds 2").out);
    CHECK(b0["b0"] == 2);
    CHECK(b0["theorem_b0"] == "2");
    CHECK(b0["agree"] == true);

    const auto table = run("oracle-enum --lengths 1,2,3 --format csv");
    CHECK(count_lines(table.out) == 9);
    CHECK(table.out.find("\n4,3,median\n") != std::string::npos);
    CHECK(table.out.find("\n3,3,median\n") != std::string::npos);
    const auto doc = json::parse(run("oracle-enum --lengths 1,1,1,1/2").out);
    CHECK(doc["rows"].size() == 16);
    CHECK(doc["half_perimeter"] == "7/4");
}

TEST_CASE("verify subcommand") {
    const auto quick = run("verify --quick --seed 42");
    CHECK(quick.status == 0);
    CHECK(quick.out.find("overall PASS") != std::string::npos);
    CHECK(run("verify --quick --seed 42").out == quick.out);
    const auto alpha = run("verify --suite alpha-identity --trials 200");
    CHECK(alpha.status == 0);
    CHECK(alpha.out.find("200/200") != std::string::npos);
    const auto seeded = run("verify --suite engine-equivalence --seed 7 --trials 20");
    CHECK(seeded.out.rfind("seed 7\n", 0) == 0);
}

TEST_CASE("output file") {
    const std::string path = "cli_test_output.json";
    std::remove(path.c_str());
    const auto r = run("betti --lengths 1,1,1,2 --output " + path);
    CHECK(r.status == 0);
    CHECK(r.out.empty());
    std::ifstream file(path);
    std::stringstream text;
    text << file.rdbuf();
    CHECK(json::parse(text.str())["total"] == "3");
    std::remove(path.c_str());
}

TEST_CASE("exit codes and diagnostics") {
    const auto range = run("xy --N 4 --h 2 --v 3", true);
    CHECK(range.status == 1);
    CHECK(range.out.find("v = 3 outside [a_h, b_h] = [-3/2, 5/2]") != std::string::npos);

    const auto field = run("xy --N 4 --h 0 --v 0", true);
    CHECK(field.status == 1);
    CHECK(field.out.find("h = 0") != std::string::npos);

    const auto weak = run("xy --N 4 --h 1/8 --v 0", true);
    CHECK(weak.status == 1);
    CHECK(weak.out.find("h > 1/N") != std::string::npos);

    CHECK(run("betti --lengths 1,2,'sqrt(2)' --engine dp").status == 1);
    CHECK(run("oracle-b0 --lengths 1,2,3,2").status == 1);
    CHECK(run("tau-curve --h 2 --v-from -3 --v-to 1 --steps 5 --N 8").status == 1);
    CHECK(run("kink --h 2 --v-from -1 --v-to 1 --steps 4").status == 1);

    CHECK(run("betti").status == 2);
    CHECK(run("betti --lengths 1,x,2").status == 2);
    CHECK(run("betti --lengths 1,1,1 --bogus").status == 2);
    CHECK(run("xy --N 4 --h 2 --v 0 --mode fast").status == 2);
    CHECK(run("frobnicate").status == 2);
    CHECK(run("").status == 2);
    CHECK(run("verify --suite nope").status == 2);
    CHECK(run("--help").status == 0);
}
