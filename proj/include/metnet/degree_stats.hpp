#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "metnet/graph.hpp"
#include "metnet/histogram.hpp"
#include "metnet/null_models.hpp"
#include "metnet/stats.hpp"

namespace metnet {

struct NullbandOptions {
    NullModel model = NullModel::ErdosRenyi;
    int replicates = 1000;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> swaps;
    BinSpec bins{0.0, 1.0};
    bool weighted = false;  ///< multiplicity-weighted degrees instead of simple-graph degrees
    bool sample_std = false;
    unsigned threads = 1;
};

struct NullbandRow {
    DegreeSide side = DegreeSide::Out;
    std::int64_t bin = 0;
    double lower = 0.0;
    std::int64_t data = 0;
    double mean = 0.0;
    double std = 0.0;
    double min = 0.0;
    double max = 0.0;
};

struct DegreeNullband {
    NullbandOptions options;
    std::uint64_t swaps = 0;
    std::vector<NullbandRow> rows;  ///< in-degree rows, then out-degree rows, by bin
    std::int64_t data_max_in = 0;
    std::int64_t data_max_out = 0;
    double null_max_in = 0.0;   ///< largest in-degree over all replicates
    double null_max_out = 0.0;
    double null_mean_max_out = 0.0;  ///< replicate-averaged maximum out-degree
    double null_mean_max_in = 0.0;

    bool in_tail_exceeds() const { return static_cast<double>(data_max_in) > null_max_in; }
    bool out_tail_exceeds() const { return static_cast<double>(data_max_out) > null_max_out; }
};

/// Degree histograms of g against a null-model ensemble, per bin. Sizes are
/// not needed: null bands are over raw degree counts.
DegreeNullband degree_nullband(const DirectedMultigraph& g, const NullbandOptions& options);

struct DegreeScatterStats {
    std::int64_t threshold = 90;
    std::size_t n_all = 0;
    std::size_t n_subset = 0;
    std::optional<double> r_all;     ///< empty when undefined
    std::optional<double> r_subset;  ///< empty when the subset has < 2 points or zero variance
    CorrelationKind kind = CorrelationKind::Pearson;
};

/// Correlation of in- vs out-degree over all vertices and over out-degree > threshold.
DegreeScatterStats degree_scatter_stats(const std::vector<DegreeRecord>& records, std::int64_t threshold = 90,
                                        CorrelationKind kind = CorrelationKind::Pearson);

struct DensityAnticorrelation {
    double frac = 0.5;
    double max_in_density = 0.0;
    double max_out_density = 0.0;
    std::vector<CategoryId> subset;    ///< in_density > frac*max_in or out_density > frac*max_out
    std::vector<CategoryId> outliers;  ///< above the cut on both sides
    std::optional<double> r;           ///< over the subset; empty when undefined
    CorrelationKind kind = CorrelationKind::Pearson;
};

/// Throws ArgumentError unless 0 < frac <= 1.
DensityAnticorrelation density_anticorrelation(const std::vector<DegreeRecord>& records, double frac = 0.5,
                                               CorrelationKind kind = CorrelationKind::Pearson);

}  // namespace metnet
