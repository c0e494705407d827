#pragma once

// Internal: integer images of exact leg lengths for the counting kernels.

#include <cstdint>
#include <vector>

#include "linkbetti/quadratic.hpp"

namespace linkbetti::detail {

// Every leg written as (a_i + b_i * sqrt(p/q)) / scale with integer a_i, b_i.
// p == 0 when all legs are rational.
struct ScaledLegs {
    std::vector<BigInt> a;
    std::vector<BigInt> b;
    BigInt total_a = 0;
    BigInt total_b = 0;
    BigInt p = 0;
    BigInt q = 1;
    BigInt scale = 1;

    bool has_root() const { return p != 0; }

    static ScaledLegs from(const std::vector<QuadraticScalar>& legs);
};

// Sign of x + y*sqrt(p/q) with p/q not a perfect square (or p == 0).
int sign_with_root(const BigInt& x, const BigInt& y, const BigInt& p, const BigInt& q);

// Narrow to int64 if |value| < 2^62.
bool fits_i62(const BigInt& value);

}  // namespace linkbetti::detail
