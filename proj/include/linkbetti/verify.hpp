#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "linkbetti/rational.hpp"

namespace linkbetti::verify {

struct Options {
    std::uint64_t seed = 42;
    bool quick = false;
    // Overrides the per-suite trial count of the randomized suites.
    std::optional<long> trials;
};

struct Failure {
    std::string inputs;
    std::string detail;
};

struct SuiteResult {
    std::string name;
    int criterion = 0;
    long passed = 0;
    long total = 0;
    bool pass = false;
    std::vector<std::string> notes;
    std::vector<Failure> failures;
};

// Suite names in criterion order.
const std::vector<std::string>& suite_names();

// Throws DomainError for an unknown name.
SuiteResult run_suite(const std::string& name, const Options& options);

std::vector<SuiteResult> run_all(const Options& options);

// Pass/fail table followed by notes and the inputs of failing cases.
void print_report(const std::vector<SuiteResult>& results, const Options& options, std::ostream& out);

// High-precision binary entropy -p ln p - (1-p) ln(1-p) with
// p = (sqrt(2v + h^2) - h + 1) / 2, evaluated with 50 significant digits from the
// exact inputs. Returned as a decimal string with `digits` significant digits.
std::string entropy_reference(const Rational& h, const Rational& v, int digits = 40);

}  // namespace linkbetti::verify
