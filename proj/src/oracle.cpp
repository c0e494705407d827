#include "linkbetti/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>

#include "linkbetti/errors.hpp"

namespace linkbetti::oracle {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_angles(const LengthVector& lengths, const std::vector<double>& angles) {
    if (angles.size() != lengths.size() - 2) {
        throw DomainError("expected " + std::to_string(lengths.size() - 2) + " angles for n = " +
                          std::to_string(lengths.size()) + ", got " + std::to_string(angles.size()));
    }
}

class UnionFind {
public:
    explicit UnionFind(std::size_t count) : parent_(count), rank_(count, 0) {
        std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }
    long roots() {
        long count = 0;
        for (std::uint32_t i = 0; i < parent_.size(); ++i) count += find(i) == i;
        return count;
    }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint8_t> rank_;
};

GridRun run_grid(const LengthVector& lengths, long resolution) {
    const std::size_t dims = lengths.size() - 2;
    long total = 1;
    for (std::size_t i = 0; i < dims; ++i) {
        if (total > kGridCellLimit / resolution) {
            throw CapacityError("grid of " + std::to_string(resolution) + "^" + std::to_string(dims) +
                                " cells exceeds the limit of " + std::to_string(kGridCellLimit));
        }
        total *= resolution;
    }

    // axis a holds leg a+1; cell centers at 2 pi (idx + 1/2) / resolution
    std::vector<std::vector<std::complex<double>>> axis(dims);
    for (std::size_t a = 0; a < dims; ++a) {
        const double len = lengths[a + 1].to_double();
        axis[a].resize(static_cast<std::size_t>(resolution));
        for (long idx = 0; idx < resolution; ++idx) {
            axis[a][static_cast<std::size_t>(idx)] = std::polar(len, kTwoPi * (idx + 0.5) / resolution);
        }
    }
    const double first = lengths[0].to_double();
    const double reach = lengths.telescopic().to_double();
    const double reach2 = reach * reach;

    // Cells are enumerated with axis 0 varying fastest, so member indices come out sorted.
    std::vector<std::uint32_t> members;
    std::vector<long> digit(dims, 0);
    for (long cell = 0; cell < total; ++cell) {
        std::complex<double> sum(first, 0.0);
        for (std::size_t a = 0; a < dims; ++a) sum += axis[a][static_cast<std::size_t>(digit[a])];
        if (std::norm(sum) <= reach2) members.push_back(static_cast<std::uint32_t>(cell));
        for (std::size_t a = 0; a < dims; ++a) {
            if (++digit[a] < resolution) break;
            digit[a] = 0;
        }
    }

    UnionFind uf(members.size());
    std::vector<long> stride(dims, 1);
    for (std::size_t a = 1; a < dims; ++a) stride[a] = stride[a - 1] * resolution;
    for (std::size_t m = 0; m < members.size(); ++m) {
        const long cell = members[m];
        for (std::size_t a = 0; a < dims; ++a) {
            const long coord = (cell / stride[a]) % resolution;
            const long next = coord + 1 == resolution ? cell - coord * stride[a] : cell + stride[a];
            const auto it = std::lower_bound(members.begin(), members.end(), static_cast<std::uint32_t>(next));
            if (it != members.end() && *it == static_cast<std::uint32_t>(next)) {
                uf.unite(static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(it - members.begin()));
            }
        }
    }
    return GridRun{resolution, static_cast<long>(members.size()), uf.roots()};
}

}  // namespace

double f_value(const LengthVector& lengths, const std::vector<double>& angles) {
    require_angles(lengths, angles);
    std::complex<double> sum(lengths[0].to_double(), 0.0);
    for (std::size_t i = 0; i < angles.size(); ++i) sum += std::polar(lengths[i + 1].to_double(), angles[i]);
    return -std::norm(sum);
}

double chain_norm(const LengthVector& lengths, const std::vector<double>& angles, double phi) {
    require_angles(lengths, angles);
    std::complex<double> sum = std::polar(lengths[0].to_double(), phi);
    for (std::size_t i = 0; i < angles.size(); ++i) sum += std::polar(lengths[i + 1].to_double(), angles[i] + phi);
    return std::abs(sum);
}

GridResult grid_components(const LengthVector& lengths, const GridConfig& cfg) {
    const std::size_t n = lengths.size();
    if (n - 2 > 4) throw DomainError("grid oracle supports n <= 6, got n = " + std::to_string(n));
    if (cfg.resolution < 16) {
        throw DomainError("resolution = " + std::to_string(cfg.resolution) + " must be at least 16");
    }
    if (cfg.refinement_rounds < 1) {
        throw DomainError("refinement rounds = " + std::to_string(cfg.refinement_rounds) + " must be at least 1");
    }
    double max_leg = 0.0;
    for (const auto& x : lengths.lengths()) max_leg = std::max(max_leg, x.to_double());
    const double threshold = cfg.margin.value_or(kTwoPi * max_leg / static_cast<double>(cfg.resolution));
    const auto margin = min_abs_signed_sum(lengths.lengths());
    if (margin.sign() == 0) throw DomainError("length vector " + lengths.to_string() + " is not generic");
    if (margin.to_double() < threshold) {
        throw DomainError("genericity margin " + std::to_string(margin.to_double()) + " is below the threshold " +
                          std::to_string(threshold));
    }

    GridResult result;
    long resolution = cfg.resolution;
    result.runs.push_back(run_grid(lengths, resolution));
    for (int round = 0; round < cfg.refinement_rounds; ++round) {
        resolution *= 2;
        result.runs.push_back(run_grid(lengths, resolution));
        const auto& prev = result.runs[result.runs.size() - 2];
        if (prev.components == result.runs.back().components) {
            result.b0 = prev.components;
            return result;
        }
    }
    std::string counts;
    for (const auto& run : result.runs) {
        if (!counts.empty()) counts += ", ";
        counts += std::to_string(run.components) + " at " + std::to_string(run.resolution);
    }
    throw InconclusiveError("component count did not stabilize for " + lengths.to_string() + " (" + counts + ")");
}

long grid_b0(const LengthVector& lengths, const GridConfig& cfg) {
    return grid_components(lengths, cfg).b0;
}

void for_each_subset(const LengthVector& lengths, const std::function<void(const SubsetRow&)>& visit) {
    const std::size_t n = lengths.size();
    if (n > kEnumerationCap) {
        throw CapacityError("subset table needs n <= " + std::to_string(kEnumerationCap) + ", got n = " +
                            std::to_string(n));
    }
    QuadraticScalar total;
    for (const auto& x : lengths.lengths()) total += x;
    SubsetRow row;
    const SubsetMask count = SubsetMask{1} << n;
    for (SubsetMask mask = 0; mask < count; ++mask) {
        if (mask != 0) {
            // mask - 1 -> mask clears the trailing ones and sets the next bit
            const auto low = static_cast<std::size_t>(std::countr_zero(mask));
            for (std::size_t i = 0; i < low; ++i) row.sum -= lengths[i];
            row.sum += lengths[low];
        }
        row.mask = mask;
        const auto cmp = row.sum * Rational(2) <=> total;
        row.cls = cmp < 0 ? SubsetClass::Short : (cmp == 0 ? SubsetClass::Median : SubsetClass::Long);
        visit(row);
    }
}

std::vector<SubsetRow> enum_subsets(const LengthVector& lengths) {
    std::vector<SubsetRow> rows;
    for_each_subset(lengths, [&](const SubsetRow& row) { rows.push_back(row); });
    return rows;
}

void write_subsets_csv(const LengthVector& lengths, std::ostream& out) {
    out << "mask,sum,class\n";
    for_each_subset(lengths, [&](const SubsetRow& row) {
        out << row.mask << ',' << row.sum.to_string() << ',' << to_string(row.cls) << '\n';
    });
}

}  // namespace linkbetti::oracle
