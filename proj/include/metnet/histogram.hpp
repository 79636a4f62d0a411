#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "metnet/graph.hpp"

namespace metnet {

/// Half-open bins [origin + k*width, origin + (k+1)*width). Unbounded in both directions.
struct BinSpec {
    double origin = 0.0;
    double width = 1.0;

    std::int64_t bin_of(double x) const;
    double lower_edge(std::int64_t bin) const { return origin + static_cast<double>(bin) * width; }
};

/// Sparse histogram keyed by bin index.
struct Histogram {
    BinSpec bins;
    std::map<std::int64_t, std::int64_t> counts;

    std::int64_t total() const;
};

/// Throws ArgumentError unless width > 0 and finite.
Histogram make_histogram(std::span<const double> values, BinSpec bins);

enum class DegreeSide { In, Out };
enum class DegreeMode { Count, Density };

Histogram degree_histogram(std::span<const DegreeRecord> records, DegreeSide side, DegreeMode mode, BinSpec bins);

}  // namespace metnet
