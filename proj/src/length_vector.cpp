#include "linkbetti/length_vector.hpp"

#include <algorithm>

#include "linkbetti/errors.hpp"

namespace linkbetti {

LengthVector::LengthVector(std::vector<QuadraticScalar> lengths) : lengths_(std::move(lengths)) {
    if (lengths_.size() < 3) {
        throw DomainError("a length vector needs at least 3 legs, got " + std::to_string(lengths_.size()));
    }
    std::optional<Rational> radicand;
    for (std::size_t i = 0; i < lengths_.size(); ++i) {
        const auto& leg = lengths_[i];
        if (leg.sign() <= 0) {
            throw DomainError("leg " + std::to_string(i + 1) + " must be positive, got " + leg.to_string());
        }
        if (leg.is_rational()) continue;
        if (radicand && *radicand != leg.radicand()) {
            throw DomainError("length vector mixes radicands " + radicand->to_string() + " and " +
                              leg.radicand().to_string());
        }
        radicand = leg.radicand();
    }
}

LengthVector LengthVector::parse(std::string_view text) {
    std::vector<QuadraticScalar> legs;
    while (true) {
        const auto comma = text.find(',');
        legs.push_back(QuadraticScalar::parse(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return LengthVector(std::move(legs));
}

LengthVector LengthVector::of(std::vector<Rational> lengths) {
    std::vector<QuadraticScalar> legs(lengths.begin(), lengths.end());
    return LengthVector(std::move(legs));
}

bool LengthVector::is_rational() const {
    return std::all_of(lengths_.begin(), lengths_.end(), [](const auto& x) { return x.is_rational(); });
}

std::optional<Rational> LengthVector::radicand() const {
    for (const auto& leg : lengths_) {
        if (!leg.is_rational()) return leg.radicand();
    }
    return std::nullopt;
}

LengthVector LengthVector::canonical() const {
    auto sorted = lengths_;
    std::stable_sort(sorted.begin(), sorted.end() - 1);
    return LengthVector(std::move(sorted));
}

LengthVector LengthVector::with_telescopic(QuadraticScalar length) const {
    auto legs = lengths_;
    legs.back() = std::move(length);
    return LengthVector(std::move(legs));
}

std::string LengthVector::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < lengths_.size(); ++i) {
        if (i > 0) out += ',';
        out += lengths_[i].to_string();
    }
    return out;
}

}  // namespace linkbetti
