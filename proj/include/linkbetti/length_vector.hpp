#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "linkbetti/quadratic.hpp"

namespace linkbetti {

// Leg lengths of a planar linkage with one telescopic leg. Legs are indexed
// from 0; the telescopic leg is always the last one (index n-1), the
// remaining n-1 legs are the fixed bars.
//
// Invariants: n >= 3, every entry strictly positive, at most one radicand
// shared by all quadratic entries.
class LengthVector {
public:
    explicit LengthVector(std::vector<QuadraticScalar> lengths);

    // Comma separated rational literals, telescopic leg last; a quadratic
    // entry is written "sqrt(p/q)".
    static LengthVector parse(std::string_view text);

    // Convenience for all-rational vectors.
    static LengthVector of(std::vector<Rational> lengths);

    std::size_t size() const { return lengths_.size(); }
    std::size_t telescopic_index() const { return lengths_.size() - 1; }
    std::size_t fixed_count() const { return lengths_.size() - 1; }

    const QuadraticScalar& operator[](std::size_t i) const { return lengths_[i]; }
    const QuadraticScalar& telescopic() const { return lengths_.back(); }
    const std::vector<QuadraticScalar>& lengths() const { return lengths_; }

    bool is_rational() const;
    // The shared radicand when some entry is irrational.
    std::optional<Rational> radicand() const;

    // Copy with the fixed legs sorted ascending (stable); the telescopic leg
    // stays last. Such permutations leave the configuration space unchanged.
    LengthVector canonical() const;

    // Same fixed legs, new telescopic length.
    LengthVector with_telescopic(QuadraticScalar length) const;

    std::string to_string() const;

    friend bool operator==(const LengthVector&, const LengthVector&) = default;

private:
    std::vector<QuadraticScalar> lengths_;
};

}  // namespace linkbetti
