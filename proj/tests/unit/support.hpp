#pragma once

// Shared generators and brute-force oracles for the unit and acceptance tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "metnet/graph.hpp"

namespace metnet::oracle {

inline DirectedGraph random_simple_graph(std::size_t n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<Arc> arcs;
    for (VertexId a = 0; a < n; ++a)
        for (VertexId b = 0; b < n; ++b)
            if (a != b && coin(rng)) arcs.push_back({a, b});
    return DirectedGraph(n, std::move(arcs));
}

/// Multigraph with `edges` edges drawn uniformly over ordered pairs (parallel edges allowed).
inline DirectedMultigraph random_multigraph(std::size_t n, std::size_t edges, std::mt19937_64& rng) {
    std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
    std::vector<Arc> list;
    while (list.size() < edges) {
        const VertexId a = pick(rng), b = pick(rng);
        if (a != b) list.push_back({a, b});
    }
    return DirectedMultigraph(n, list);
}

/// Preferential duplication: each new edge copies an existing edge with
/// probability `copy`, otherwise lands on a uniform pair.
inline DirectedMultigraph duplication_multigraph(std::size_t n, std::size_t edges, double copy, std::mt19937_64& rng) {
    std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
    std::bernoulli_distribution dup(copy);
    std::vector<Arc> list;
    while (list.size() < edges) {
        if (!list.empty() && dup(rng)) {
            std::uniform_int_distribution<std::size_t> which(0, list.size() - 1);
            list.push_back(list[which(rng)]);
            continue;
        }
        const VertexId a = pick(rng), b = pick(rng);
        if (a != b) list.push_back({a, b});
    }
    return DirectedMultigraph(n, list);
}

inline std::vector<std::int64_t> in_sequence(const DirectedMultigraph& g) {
    std::vector<std::int64_t> d;
    for (VertexId v = 0; v < g.vertex_count(); ++v) d.push_back(g.in_degree(v));
    return d;
}

inline std::vector<std::int64_t> out_sequence(const DirectedMultigraph& g) {
    std::vector<std::int64_t> d;
    for (VertexId v = 0; v < g.vertex_count(); ++v) d.push_back(g.out_degree(v));
    return d;
}

/// Adjacency matrix lookup for brute-force oracles.
inline std::vector<std::vector<bool>> adjacency(const DirectedGraph& g) {
    std::vector<std::vector<bool>> m(g.vertex_count(), std::vector<bool>(g.vertex_count(), false));
    for (const auto& a : g.arcs()) m[a.source][a.target] = true;
    return m;
}

/// Outward transitivity by explicit enumeration of all vertex triples.
struct TransitivityCount {
    std::int64_t paths = 0;
    std::int64_t closed = 0;
};

inline std::vector<TransitivityCount> transitivity_oracle(const DirectedGraph& g, bool forward) {
    const auto m = adjacency(g);
    const std::size_t n = g.vertex_count();
    std::vector<TransitivityCount> out(n);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t h = 0; h < n; ++h)
            for (std::size_t w = 0; w < n; ++w) {
                if (v == h || h == w || w == v) continue;
                if (!m[v][h] || !m[h][w]) continue;
                ++out[v].paths;
                if (forward ? m[v][w] : m[w][v]) ++out[v].closed;
            }
    return out;
}

}  // namespace metnet::oracle
