#include "metnet/degree_stats.hpp"

#include <algorithm>

#include "metnet/error.hpp"

namespace metnet {
namespace {

std::vector<std::int64_t> side_degrees(const DirectedMultigraph& g, DegreeSide side, bool weighted) {
    std::vector<std::int64_t> out(g.vertex_count(), 0);
    for (const auto& a : g.arcs()) {
        const std::int64_t w = weighted ? a.multiplicity : 1;
        out[side == DegreeSide::In ? a.target : a.source] += w;
    }
    return out;
}

MetricValue histogram_of(const std::vector<std::int64_t>& deg, const BinSpec& bins) {
    MetricValue v;
    for (auto d : deg) v[bins.bin_of(static_cast<double>(d))] += 1.0;
    return v;
}

}  // namespace

DegreeNullband degree_nullband(const DirectedMultigraph& g, const NullbandOptions& options) {
    if (!(options.bins.width > 0.0)) throw ArgumentError("bin width must be positive");
    const bool weighted = options.weighted;
    const BinSpec bins = options.bins;
    std::vector<Metric> metrics;
    for (DegreeSide side : {DegreeSide::In, DegreeSide::Out}) {
        metrics.push_back({side == DegreeSide::In ? "in_degree_histogram" : "out_degree_histogram",
                           [=](const DirectedMultigraph& rep) {
                               return histogram_of(side_degrees(rep, side, weighted), bins);
                           }});
    }
    metrics.push_back({"max_degree", [=](const DirectedMultigraph& rep) {
                           MetricValue v;
                           for (DegreeSide side : {DegreeSide::In, DegreeSide::Out}) {
                               const auto d = side_degrees(rep, side, weighted);
                               v[side == DegreeSide::In ? 0 : 1] =
                                   d.empty() ? 0.0 : static_cast<double>(*std::max_element(d.begin(), d.end()));
                           }
                           return v;
                       }});

    EnsembleOptions ens;
    ens.model = options.model;
    ens.replicates = options.replicates;
    ens.seed = options.seed;
    ens.swaps = options.swaps;
    ens.sample_std = options.sample_std;
    ens.threads = options.threads;
    const auto stats = run_ensemble(g, metrics, ens);

    DegreeNullband out;
    out.options = options;
    out.swaps = stats[0].swaps;
    for (int s = 0; s < 2; ++s) {
        const DegreeSide side = s == 0 ? DegreeSide::In : DegreeSide::Out;
        const auto deg = side_degrees(g, side, weighted);
        const MetricValue data = histogram_of(deg, bins);
        std::vector<std::int64_t> keys = stats[s].domain;
        for (const auto& [k, c] : data) keys.push_back(k);
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        for (auto k : keys) {
            NullbandRow row;
            row.side = side;
            row.bin = k;
            row.lower = bins.lower_edge(k);
            if (auto it = data.find(k); it != data.end()) row.data = static_cast<std::int64_t>(it->second);
            if (auto i = stats[s].find(k)) {
                row.mean = stats[s].mean[*i];
                row.std = stats[s].std[*i];
                row.min = stats[s].min[*i];
                row.max = stats[s].max[*i];
            }
            out.rows.push_back(row);
        }
        const std::int64_t dmax = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
        (side == DegreeSide::In ? out.data_max_in : out.data_max_out) = dmax;
    }
    const auto& mx = stats[2];
    if (auto i = mx.find(0)) {
        out.null_max_in = mx.max[*i];
        out.null_mean_max_in = mx.mean[*i];
    }
    if (auto i = mx.find(1)) {
        out.null_max_out = mx.max[*i];
        out.null_mean_max_out = mx.mean[*i];
    }
    return out;
}

DegreeScatterStats degree_scatter_stats(const std::vector<DegreeRecord>& records, std::int64_t threshold,
                                        CorrelationKind kind) {
    DegreeScatterStats out;
    out.threshold = threshold;
    out.kind = kind;
    std::vector<double> in_all, out_all, in_sub, out_sub;
    for (const auto& r : records) {
        in_all.push_back(static_cast<double>(r.in_degree));
        out_all.push_back(static_cast<double>(r.out_degree));
        if (r.out_degree > threshold) {
            in_sub.push_back(static_cast<double>(r.in_degree));
            out_sub.push_back(static_cast<double>(r.out_degree));
        }
    }
    out.n_all = in_all.size();
    out.n_subset = in_sub.size();
    out.r_all = correlation(in_all, out_all, kind);
    out.r_subset = correlation(in_sub, out_sub, kind);
    return out;
}

DensityAnticorrelation density_anticorrelation(const std::vector<DegreeRecord>& records, double frac,
                                               CorrelationKind kind) {
    if (!(frac > 0.0 && frac <= 1.0)) throw ArgumentError("density fraction must lie in (0, 1]");
    DensityAnticorrelation out;
    out.frac = frac;
    out.kind = kind;
    for (const auto& r : records) {
        out.max_in_density = std::max(out.max_in_density, r.in_density);
        out.max_out_density = std::max(out.max_out_density, r.out_density);
    }
    const double cut_in = frac * out.max_in_density;
    const double cut_out = frac * out.max_out_density;
    std::vector<double> x, y;
    for (const auto& r : records) {
        const bool hi_in = r.in_density > cut_in;
        const bool hi_out = r.out_density > cut_out;
        if (!hi_in && !hi_out) continue;
        out.subset.push_back(r.category);
        if (hi_in && hi_out) out.outliers.push_back(r.category);
        x.push_back(r.in_density);
        y.push_back(r.out_density);
    }
    out.r = correlation(x, y, kind);
    return out;
}

}  // namespace metnet
