#include "metnet/persistence.hpp"

#include <bit>

#include "metnet/error.hpp"

namespace metnet {
namespace {

MetricValue to_metric(const MultiplicityDistribution& d) {
    MetricValue v;
    for (const auto& [m, c] : d) v[m] = static_cast<double>(c);
    return v;
}

std::vector<PersistenceBin> compare(const MultiplicityDistribution& data, const EnsembleStats& stats,
                                    double threshold) {
    std::map<std::int64_t, PersistenceBin> rows;
    for (const auto& [m, c] : data) rows[m] = {m, c, 0.0, 0.0, false};
    for (std::size_t k = 0; k < stats.domain.size(); ++k) {
        auto& row = rows[stats.domain[k]];
        row.multiplicity = stats.domain[k];
        row.rand_mean = stats.mean[k];
        row.rand_std = stats.std[k];
    }
    std::vector<PersistenceBin> out;
    for (auto& [m, row] : rows) {
        if (row.data_count == 0 && row.rand_mean <= 0.0) continue;
        row.exceeds = static_cast<double>(row.data_count) > row.rand_mean + threshold * row.rand_std;
        out.push_back(row);
    }
    return out;
}

}  // namespace

MultiplicityDistribution multiplicity_distribution(const DirectedMultigraph& g) {
    MultiplicityDistribution d;
    for (const auto& a : g.arcs()) ++d[a.multiplicity];
    return d;
}

MultiplicityDistribution log2_binned(const MultiplicityDistribution& d) {
    MultiplicityDistribution out;
    for (const auto& [m, c] : d)
        out[static_cast<std::int64_t>(std::bit_width(static_cast<std::uint64_t>(m))) - 1] += c;
    return out;
}

PersistenceReport persistence_test(const DirectedMultigraph& g, const PersistenceOptions& options) {
    if (options.replicates < 2) throw ArgumentError("persistence test needs at least 2 replicates");
    const MultiplicityDistribution data = multiplicity_distribution(g);

    std::vector<Metric> metrics = {
        {"multiplicity", [](const DirectedMultigraph& r) { return to_metric(multiplicity_distribution(r)); }},
        {"multiplicity_log2", [](const DirectedMultigraph& r) {
             return to_metric(log2_binned(multiplicity_distribution(r)));
         }},
        {"edge_mass", [](const DirectedMultigraph& r) {
             std::int64_t mass = 0;
             for (const auto& [m, c] : multiplicity_distribution(r)) mass += m * c;
             return MetricValue{{0, static_cast<double>(mass)}};
         }},
    };
    EnsembleOptions ens;
    ens.model = NullModel::ConfigMulti;
    ens.replicates = options.replicates;
    ens.seed = options.seed;
    ens.swaps = options.swaps;
    ens.sample_std = options.sample_std;
    ens.threads = options.threads;
    const auto stats = run_ensemble(g, metrics, ens);

    PersistenceReport report;
    report.replicates = options.replicates;
    report.seed = options.seed;
    report.swaps = stats[0].swaps;
    report.threshold = options.threshold;
    report.bins = compare(data, stats[0], options.threshold);
    report.log_bins = compare(log2_binned(data), stats[1], options.threshold);
    for (const auto& [m, c] : data) report.data_mass += m * c;
    if (!stats[2].domain.empty()) {
        report.replicate_mass_min = stats[2].min[0];
        report.replicate_mass_max = stats[2].max[0];
    }
    for (auto it = report.bins.rbegin(); it != report.bins.rend() && it->exceeds; ++it) report.onset = it->multiplicity;
    return report;
}

}  // namespace metnet
