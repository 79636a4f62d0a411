#include "metnet/null_models.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>
#include <unordered_set>

#include "metnet/error.hpp"

namespace metnet {
namespace {

std::uint64_t arc_key(VertexId u, VertexId v) { return (static_cast<std::uint64_t>(u) << 32) | v; }

Arc pair_from_index(std::uint64_t index, std::size_t n) {
    auto u = static_cast<VertexId>(index / (n - 1));
    auto r = static_cast<VertexId>(index % (n - 1));
    return {u, r < u ? r : r + 1};
}

std::vector<Arc> swap_edges(std::vector<Arc> edges, const SwapConfig& cfg, SwapStats* stats) {
    SwapStats local;
    const std::size_t m = edges.size();
    if (m >= 2 && cfg.attempts > 0) {
        Rng rng(cfg.seed);
        std::unordered_set<std::uint64_t> present;
        if (cfg.simple) {
            present.reserve(m * 2);
            for (const auto& e : edges)
                if (!present.insert(arc_key(e.source, e.target)).second)
                    throw ArgumentError("simple swap requires a graph without parallel edges");
        }
        for (std::uint64_t t = 0; t < cfg.attempts; ++t) {
            ++local.attempted;
            std::size_t i = uniform_below(rng, m);
            std::size_t j = uniform_below(rng, m - 1);
            if (j >= i) ++j;
            Arc& e1 = edges[i];
            Arc& e2 = edges[j];
            const Arc n1{e1.source, e2.target};
            const Arc n2{e2.source, e1.target};
            if (n1.source == n1.target || n2.source == n2.target) continue;
            if (cfg.simple) {
                if (present.count(arc_key(n1.source, n1.target)) || present.count(arc_key(n2.source, n2.target)))
                    continue;
                present.erase(arc_key(e1.source, e1.target));
                present.erase(arc_key(e2.source, e2.target));
                present.insert(arc_key(n1.source, n1.target));
                present.insert(arc_key(n2.source, n2.target));
            }
            e1 = n1;
            e2 = n2;
            ++local.accepted;
        }
    }
    if (stats) *stats = local;
    return edges;
}

}  // namespace

DirectedGraph sample_er(std::size_t n, std::size_t arc_count, std::uint64_t seed) {
    const std::uint64_t pairs = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1);
    if (arc_count > pairs)
        throw ArgumentError("ER arc count " + std::to_string(arc_count) + " exceeds n(n-1) = " + std::to_string(pairs));
    Rng rng(seed);
    // Draw the smaller of the arc set and its complement by rejection.
    const bool complement = arc_count > pairs / 2;
    const std::uint64_t draws = complement ? pairs - arc_count : arc_count;
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(draws * 2);
    std::vector<std::uint64_t> order;
    order.reserve(draws);
    while (order.size() < draws) {
        std::uint64_t p = uniform_below(rng, pairs);
        if (chosen.insert(p).second) order.push_back(p);
    }
    std::vector<Arc> arcs;
    arcs.reserve(arc_count);
    if (complement) {
        for (std::uint64_t p = 0; p < pairs; ++p)
            if (!chosen.count(p)) arcs.push_back(pair_from_index(p, n));
    } else {
        for (auto p : order) arcs.push_back(pair_from_index(p, n));
    }
    return DirectedGraph(n, std::move(arcs));
}

DirectedMultigraph swap_randomize(const DirectedMultigraph& g, const SwapConfig& cfg, SwapStats* stats) {
    return DirectedMultigraph(g.vertex_count(), swap_edges(g.edge_list(), cfg, stats));
}

DirectedGraph swap_randomize(const DirectedGraph& g, const SwapConfig& cfg, SwapStats* stats) {
    SwapConfig simple_cfg = cfg;
    simple_cfg.simple = true;
    std::vector<Arc> edges(g.arcs().begin(), g.arcs().end());
    return DirectedGraph(g.vertex_count(), swap_edges(std::move(edges), simple_cfg, stats));
}

std::string to_string(NullModel model) {
    switch (model) {
        case NullModel::ErdosRenyi: return "er";
        case NullModel::ConfigSimple: return "config-simple";
        case NullModel::ConfigMulti: return "config-multi";
    }
    return "unknown";
}

NullModel parse_null_model(const std::string& name) {
    if (name == "er") return NullModel::ErdosRenyi;
    if (name == "config-simple" || name == "config") return NullModel::ConfigSimple;
    if (name == "config-multi") return NullModel::ConfigMulti;
    throw ArgumentError("unknown null model '" + name + "'");
}

std::optional<std::size_t> EnsembleStats::find(std::int64_t key) const {
    auto it = std::lower_bound(domain.begin(), domain.end(), key);
    if (it == domain.end() || *it != key) return std::nullopt;
    return static_cast<std::size_t>(it - domain.begin());
}

DirectedMultigraph sample_null_model(const DirectedMultigraph& template_graph, NullModel model, std::uint64_t swaps,
                                     std::uint64_t seed) {
    switch (model) {
        case NullModel::ErdosRenyi:
            return as_multigraph(sample_er(template_graph.vertex_count(), template_graph.pair_count(), seed));
        case NullModel::ConfigSimple: {
            DirectedGraph simple = project_simple(template_graph);
            return as_multigraph(swap_randomize(simple, SwapConfig{swaps, true, seed}));
        }
        case NullModel::ConfigMulti:
            return swap_randomize(template_graph, SwapConfig{swaps, false, seed});
    }
    throw ArgumentError("unknown null model");
}

std::vector<EnsembleStats> run_ensemble(const DirectedMultigraph& template_graph, const std::vector<Metric>& metrics,
                                        const EnsembleOptions& options) {
    if (options.replicates < 1) throw ArgumentError("ensemble needs at least one replicate");
    const std::int64_t randomized_edges = options.model == NullModel::ConfigMulti
                                              ? template_graph.edge_count()
                                              : static_cast<std::int64_t>(template_graph.pair_count());
    const std::uint64_t swaps = options.swaps.value_or(default_swap_attempts(randomized_edges));
    const auto R = static_cast<std::size_t>(options.replicates);

    // values[r][m] = metric m evaluated on replicate r
    std::vector<std::vector<MetricValue>> values(R, std::vector<MetricValue>(metrics.size()));
    std::vector<std::exception_ptr> errors(R);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t r = next++; r < R; r = next++) {
            try {
                DirectedMultigraph replicate =
                    sample_null_model(template_graph, options.model, swaps, replicate_seed(options.seed, r));
                for (std::size_t m = 0; m < metrics.size(); ++m) values[r][m] = metrics[m].evaluate(replicate);
            } catch (...) {
                errors[r] = std::current_exception();
            }
        }
    };

    unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, R));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (std::size_t r = 0; r < R; ++r) {
        if (!errors[r]) continue;
        try {
            std::rethrow_exception(errors[r]);
        } catch (const std::exception& e) {
            throw EnsembleError(static_cast<int>(r), e.what());
        }
    }

    std::vector<EnsembleStats> result;
    result.reserve(metrics.size());
    for (std::size_t m = 0; m < metrics.size(); ++m) {
        EnsembleStats s;
        s.metric = metrics[m].name;
        s.model = options.model;
        s.replicates = options.replicates;
        s.seed = options.seed;
        s.swaps = options.model == NullModel::ErdosRenyi ? 0 : swaps;
        s.sample_std = options.sample_std;

        for (std::size_t r = 0; r < R; ++r)
            for (const auto& [key, v] : values[r][m]) s.domain.push_back(key);
        std::sort(s.domain.begin(), s.domain.end());
        s.domain.erase(std::unique(s.domain.begin(), s.domain.end()), s.domain.end());

        const std::size_t d = s.domain.size();
        s.mean.assign(d, 0.0);
        s.std.assign(d, 0.0);
        s.min.assign(d, 0.0);
        s.max.assign(d, 0.0);
        std::vector<double> column(R);
        for (std::size_t k = 0; k < d; ++k) {
            for (std::size_t r = 0; r < R; ++r) {
                auto it = values[r][m].find(s.domain[k]);
                column[r] = it == values[r][m].end() ? 0.0 : it->second;
            }
            double sum = 0.0;
            for (double x : column) sum += x;
            const double mean = sum / static_cast<double>(R);
            double ss = 0.0;
            for (double x : column) ss += (x - mean) * (x - mean);
            const double denom = options.sample_std && R > 1 ? static_cast<double>(R - 1) : static_cast<double>(R);
            s.mean[k] = mean;
            s.std[k] = std::sqrt(ss / denom);
            auto [lo, hi] = std::minmax_element(column.begin(), column.end());
            s.min[k] = *lo;
            s.max[k] = *hi;
        }
        result.push_back(std::move(s));
    }
    return result;
}

EnsembleStats run_ensemble(const DirectedMultigraph& template_graph, const Metric& metric,
                           const EnsembleOptions& options) {
    return std::move(run_ensemble(template_graph, std::vector<Metric>{metric}, options).front());
}

}  // namespace metnet
