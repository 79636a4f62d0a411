#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "metnet/ingest.hpp"

namespace metnet {

/// Vertex index; equals CategoryId::value for graphs built from a corpus.
using VertexId = std::uint32_t;

struct Arc {
    VertexId source = 0;
    VertexId target = 0;

    friend auto operator<=>(const Arc&, const Arc&) = default;
};

struct WeightedArc {
    VertexId source = 0;
    VertexId target = 0;
    std::int64_t multiplicity = 1;

    friend auto operator<=>(const WeightedArc&, const WeightedArc&) = default;
};

/// Simple directed graph: at most one arc per ordered pair, no loops.
/// Immutable after construction; arcs are kept sorted by (source, target).
class DirectedGraph {
public:
    DirectedGraph() = default;
    /// Duplicate arcs collapse to one; loops and out-of-range endpoints throw ArgumentError.
    DirectedGraph(std::size_t vertex_count, std::vector<Arc> arcs);

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t arc_count() const noexcept { return arcs_.size(); }
    std::span<const Arc> arcs() const noexcept { return arcs_; }

    std::span<const VertexId> out_neighbors(VertexId v) const;
    std::span<const VertexId> in_neighbors(VertexId v) const;
    bool has_arc(VertexId u, VertexId v) const;

    std::size_t out_degree(VertexId v) const { return out_neighbors(v).size(); }
    std::size_t in_degree(VertexId v) const { return in_neighbors(v).size(); }

    friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
        return a.n_ == b.n_ && a.arcs_ == b.arcs_;
    }

private:
    std::size_t n_ = 0;
    std::vector<Arc> arcs_;
    std::vector<std::size_t> out_offsets_;
    std::vector<VertexId> out_targets_;
    std::vector<std::size_t> in_offsets_;
    std::vector<VertexId> in_sources_;
};

/// Directed multigraph: ordered pairs with multiplicity >= 1, no loops.
/// Optionally carries the word list behind every pair, aligned with arcs().
class DirectedMultigraph {
public:
    DirectedMultigraph() = default;
    /// Each element is one edge; parallel edges accumulate into multiplicity.
    DirectedMultigraph(std::size_t vertex_count, std::span<const Arc> edges);
    /// Pairs may repeat; multiplicities of repeated pairs are added.
    DirectedMultigraph(std::size_t vertex_count, std::vector<WeightedArc> arcs);

    std::size_t vertex_count() const noexcept { return n_; }
    /// Number of distinct connected ordered pairs.
    std::size_t pair_count() const noexcept { return arcs_.size(); }
    /// N: total number of edges (sum of multiplicities).
    std::int64_t edge_count() const noexcept { return total_; }
    std::span<const WeightedArc> arcs() const noexcept { return arcs_; }

    std::int64_t multiplicity(VertexId u, VertexId v) const;
    std::int64_t out_degree(VertexId v) const { return out_weight_.at(v); }
    std::int64_t in_degree(VertexId v) const { return in_weight_.at(v); }

    /// Arcs leaving v (sorted by target) and entering v (sorted by source).
    std::span<const WeightedArc> out_arcs(VertexId v) const;
    std::span<const WeightedArc> in_arcs(VertexId v) const;

    /// One Arc per unit of multiplicity, in arc order.
    std::vector<Arc> edge_list() const;

    const std::vector<std::vector<std::string>>& words() const noexcept { return words_; }
    void set_words(std::vector<std::vector<std::string>> words);

    friend bool operator==(const DirectedMultigraph& a, const DirectedMultigraph& b) {
        return a.n_ == b.n_ && a.arcs_ == b.arcs_;
    }

private:
    void index();

    std::size_t n_ = 0;
    std::int64_t total_ = 0;
    std::vector<WeightedArc> arcs_;
    std::vector<std::size_t> out_offsets_;
    std::vector<WeightedArc> in_arcs_;
    std::vector<std::size_t> in_offsets_;
    std::vector<std::int64_t> out_weight_;
    std::vector<std::int64_t> in_weight_;
    std::vector<std::vector<std::string>> words_;
};

/// Multiplicity of (u,v) = number of records mapping u to v. Words are attached per pair.
DirectedMultigraph build_multigraph(const std::vector<MetaphorRecord>& records, std::size_t vertex_count);

DirectedGraph project_simple(const DirectedMultigraph& g);
/// Every arc with multiplicity 1.
DirectedMultigraph as_multigraph(const DirectedGraph& g);

struct DegreeRecord {
    CategoryId category;
    std::int64_t in_degree = 0;
    std::int64_t out_degree = 0;
    std::int64_t size = 1;
    double in_density = 0.0;
    double out_density = 0.0;
};

/// Sorted by category id. Throws ArgumentError when sizes do not cover every vertex.
std::vector<DegreeRecord> degrees(const DirectedGraph& g, const CategorySizeTable& sizes);
/// Multiplicity-weighted in/out degrees.
std::vector<DegreeRecord> degrees(const DirectedMultigraph& g, const CategorySizeTable& sizes);

}  // namespace metnet
