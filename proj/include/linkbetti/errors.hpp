#pragma once

#include <stdexcept>
#include <string>

namespace linkbetti {

// Argument outside the mathematical domain of an operation (negative
// radicand, non-positive field, mixed quadratic extensions, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Parameter outside an admissible interval, e.g. v outside [a_h, b_h].
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Input too large for the selected engine (enumeration cap, DP memory guard).
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

// Malformed literal or textual input.
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The grid oracle did not stabilize across refinements.
class InconclusiveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace linkbetti
