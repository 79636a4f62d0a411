#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "metnet/graph.hpp"
#include "metnet/null_models.hpp"

namespace metnet {

/// multiplicity m -> number of connected ordered pairs carrying exactly m edges.
using MultiplicityDistribution = std::map<std::int64_t, std::int64_t>;

MultiplicityDistribution multiplicity_distribution(const DirectedMultigraph& g);

/// Power-of-two bins: key b collects multiplicities in [2^b, 2^(b+1)).
MultiplicityDistribution log2_binned(const MultiplicityDistribution& d);

struct PersistenceBin {
    std::int64_t multiplicity = 0;  ///< or log2 bin index for log-binned rows
    std::int64_t data_count = 0;
    double rand_mean = 0.0;
    double rand_std = 0.0;
    bool exceeds = false;  ///< data_count > rand_mean + threshold * rand_std
};

struct PersistenceReport {
    std::vector<PersistenceBin> bins;      ///< union of data and ensemble support, by multiplicity
    std::vector<PersistenceBin> log_bins;  ///< same on power-of-two bins
    /// Smallest m such that every occupied bin >= m exceeds the band; empty if none.
    std::optional<std::int64_t> onset;
    /// Data edge mass and the min/max edge mass over replicates (all three equal under swaps).
    std::int64_t data_mass = 0;
    double replicate_mass_min = 0.0;
    double replicate_mass_max = 0.0;
    int replicates = 0;
    std::uint64_t seed = 0;
    std::uint64_t swaps = 0;
    double threshold = 2.0;
};

struct PersistenceOptions {
    int replicates = 1000;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> swaps;
    double threshold = 2.0;
    bool sample_std = false;
    unsigned threads = 1;
};

/// Compares the data's multiplicity distribution against multigraph-swap
/// configuration ensembles. A bin is occupied when the data or the ensemble
/// mean is positive there.
PersistenceReport persistence_test(const DirectedMultigraph& g, const PersistenceOptions& options);

}  // namespace metnet
