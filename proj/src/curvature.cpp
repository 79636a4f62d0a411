#include "metnet/curvature.hpp"

#include <atomic>
#include <deque>
#include <thread>

namespace metnet {
namespace {

std::vector<std::int64_t> bfs(const DirectedGraph& g, VertexId from) {
    std::vector<std::int64_t> dist(g.vertex_count(), kNoPath);
    std::deque<VertexId> q{from};
    dist[from] = 0;
    while (!q.empty()) {
        const VertexId u = q.front();
        q.pop_front();
        for (VertexId w : g.out_neighbors(u))
            if (dist[w] == kNoPath) {
                dist[w] = dist[u] + 1;
                q.push_back(w);
            }
    }
    return dist;
}

}  // namespace

std::string_view to_string(OllivierStatus s) {
    switch (s) {
        case OllivierStatus::Defined: return "ok";
        case OllivierStatus::EmptyInSupport: return "empty_in";
        case OllivierStatus::EmptyOutSupport: return "empty_out";
        case OllivierStatus::Unreachable: return "unreachable";
    }
    return "unknown";
}

std::vector<EdgeCurvature> forman_all(const DirectedMultigraph& g) {
    std::vector<EdgeCurvature> out;
    out.reserve(g.pair_count());
    for (const auto& a : g.arcs()) {
        EdgeCurvature e;
        e.source = a.source;
        e.target = a.target;
        e.multiplicity = a.multiplicity;
        e.forman = 2 - g.in_degree(a.source) - g.out_degree(a.target);
        out.push_back(e);
    }
    return out;
}

std::vector<std::vector<std::int64_t>> shortest_hops(const DirectedMultigraph& g, const std::vector<VertexId>& sources,
                                                     const std::vector<VertexId>& targets) {
    const DirectedGraph simple = project_simple(g);
    std::vector<std::vector<std::int64_t>> out;
    out.reserve(sources.size());
    for (VertexId s : sources) {
        const auto dist = bfs(simple, s);
        auto& row = out.emplace_back();
        for (VertexId t : targets) row.push_back(dist.at(t));
    }
    return out;
}

std::vector<EdgeCurvature> curvature_all(const DirectedMultigraph& g, unsigned threads) {
    std::vector<EdgeCurvature> records = forman_all(g);
    const DirectedGraph simple = project_simple(g);
    const std::size_t n = g.vertex_count();

    // hop rows for every vertex that can carry mass as an in-neighbor
    std::vector<std::vector<std::int64_t>> hops(n);
    for (VertexId v = 0; v < n; ++v)
        if (simple.out_degree(v) > 0) hops[v] = bfs(simple, v);

    auto compute = [&](EdgeCurvature& e) {
        const auto in = g.in_arcs(e.source);
        const auto out = g.out_arcs(e.target);
        if (in.empty()) {
            e.status = OllivierStatus::EmptyInSupport;
            return;
        }
        if (out.empty()) {
            e.status = OllivierStatus::EmptyOutSupport;
            return;
        }
        const std::int64_t a = g.in_degree(e.source);
        const std::int64_t b = g.out_degree(e.target);
        std::vector<std::int64_t> supply, demand;
        for (const auto& x : in) supply.push_back(x.multiplicity * b);
        for (const auto& y : out) demand.push_back(y.multiplicity * a);
        std::vector<std::vector<std::int64_t>> cost(in.size());
        for (std::size_t i = 0; i < in.size(); ++i)
            for (const auto& y : out) cost[i].push_back(hops[in[i].source][y.target]);
        try {
            const std::int64_t c = min_cost_transport(supply, demand, cost);
            const std::int64_t total = a * b;
            e.ollivier = static_cast<double>(total - c) / static_cast<double>(total);
            e.status = OllivierStatus::Defined;
        } catch (const UnreachableError&) {
            e.status = OllivierStatus::Unreachable;
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(records.size())));
    if (workers <= 1) {
        for (auto& e : records) compute(e);
        return records;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t k; (k = next.fetch_add(1)) < records.size();) compute(records[k]);
        });
    for (auto& t : pool) t.join();
    return records;
}

CurvatureHistograms curvature_histograms(const std::vector<EdgeCurvature>& records, BinSpec forman_bins,
                                         BinSpec ollivier_bins) {
    std::vector<double> f, o;
    CurvatureHistograms h;
    for (const auto& e : records) {
        f.push_back(static_cast<double>(e.forman));
        if (e.ollivier) o.push_back(*e.ollivier);
        else ++h.ollivier_undefined;
    }
    h.forman = make_histogram(f, forman_bins);
    h.ollivier = make_histogram(o, ollivier_bins);
    return h;
}

}  // namespace metnet
