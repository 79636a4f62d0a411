#include "metnet/graph.hpp"

#include <algorithm>
#include <tuple>

#include "metnet/error.hpp"

namespace metnet {
namespace {

void check_arc(std::size_t n, VertexId u, VertexId v) {
    if (u >= n || v >= n) throw ArgumentError("arc endpoint out of range");
    if (u == v) throw ArgumentError("self-loop at vertex " + std::to_string(u));
}

}  // namespace

DirectedGraph::DirectedGraph(std::size_t vertex_count, std::vector<Arc> arcs) : n_(vertex_count), arcs_(std::move(arcs)) {
    for (const auto& a : arcs_) check_arc(n_, a.source, a.target);
    std::sort(arcs_.begin(), arcs_.end());
    arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());

    out_offsets_.assign(n_ + 1, 0);
    in_offsets_.assign(n_ + 1, 0);
    for (const auto& a : arcs_) {
        ++out_offsets_[a.source + 1];
        ++in_offsets_[a.target + 1];
    }
    for (std::size_t v = 0; v < n_; ++v) {
        out_offsets_[v + 1] += out_offsets_[v];
        in_offsets_[v + 1] += in_offsets_[v];
    }
    out_targets_.resize(arcs_.size());
    in_sources_.resize(arcs_.size());
    std::vector<std::size_t> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
        out_targets_[i] = arcs_[i].target;
        in_sources_[in_fill[arcs_[i].target]++] = arcs_[i].source;
    }
}

std::span<const VertexId> DirectedGraph::out_neighbors(VertexId v) const {
    return {out_targets_.data() + out_offsets_.at(v), out_offsets_[v + 1] - out_offsets_[v]};
}

std::span<const VertexId> DirectedGraph::in_neighbors(VertexId v) const {
    return {in_sources_.data() + in_offsets_.at(v), in_offsets_[v + 1] - in_offsets_[v]};
}

bool DirectedGraph::has_arc(VertexId u, VertexId v) const {
    if (u >= n_) return false;
    auto out = out_neighbors(u);
    return std::binary_search(out.begin(), out.end(), v);
}

DirectedMultigraph::DirectedMultigraph(std::size_t vertex_count, std::span<const Arc> edges) : n_(vertex_count) {
    arcs_.reserve(edges.size());
    for (const auto& e : edges) {
        check_arc(n_, e.source, e.target);
        arcs_.push_back({e.source, e.target, 1});
    }
    index();
}

DirectedMultigraph::DirectedMultigraph(std::size_t vertex_count, std::vector<WeightedArc> arcs)
    : n_(vertex_count), arcs_(std::move(arcs)) {
    for (const auto& a : arcs_) {
        check_arc(n_, a.source, a.target);
        if (a.multiplicity < 1) throw ArgumentError("multiplicity must be >= 1");
    }
    index();
}

void DirectedMultigraph::index() {
    std::sort(arcs_.begin(), arcs_.end(), [](const WeightedArc& a, const WeightedArc& b) {
        return std::tie(a.source, a.target) < std::tie(b.source, b.target);
    });
    std::vector<WeightedArc> merged;
    merged.reserve(arcs_.size());
    for (const auto& a : arcs_) {
        if (!merged.empty() && merged.back().source == a.source && merged.back().target == a.target)
            merged.back().multiplicity += a.multiplicity;
        else
            merged.push_back(a);
    }
    arcs_ = std::move(merged);

    total_ = 0;
    out_weight_.assign(n_, 0);
    in_weight_.assign(n_, 0);
    out_offsets_.assign(n_ + 1, 0);
    in_offsets_.assign(n_ + 1, 0);
    for (const auto& a : arcs_) {
        total_ += a.multiplicity;
        out_weight_[a.source] += a.multiplicity;
        in_weight_[a.target] += a.multiplicity;
        ++out_offsets_[a.source + 1];
        ++in_offsets_[a.target + 1];
    }
    for (std::size_t v = 0; v < n_; ++v) {
        out_offsets_[v + 1] += out_offsets_[v];
        in_offsets_[v + 1] += in_offsets_[v];
    }
    in_arcs_.resize(arcs_.size());
    std::vector<std::size_t> fill(in_offsets_.begin(), in_offsets_.end() - 1);
    for (const auto& a : arcs_) in_arcs_[fill[a.target]++] = a;
}

std::int64_t DirectedMultigraph::multiplicity(VertexId u, VertexId v) const {
    if (u >= n_) return 0;
    auto out = out_arcs(u);
    auto it = std::lower_bound(out.begin(), out.end(), v,
                               [](const WeightedArc& a, VertexId t) { return a.target < t; });
    return it != out.end() && it->target == v ? it->multiplicity : 0;
}

std::span<const WeightedArc> DirectedMultigraph::out_arcs(VertexId v) const {
    return {arcs_.data() + out_offsets_.at(v), out_offsets_[v + 1] - out_offsets_[v]};
}

std::span<const WeightedArc> DirectedMultigraph::in_arcs(VertexId v) const {
    return {in_arcs_.data() + in_offsets_.at(v), in_offsets_[v + 1] - in_offsets_[v]};
}

std::vector<Arc> DirectedMultigraph::edge_list() const {
    std::vector<Arc> edges;
    edges.reserve(static_cast<std::size_t>(total_));
    for (const auto& a : arcs_)
        for (std::int64_t k = 0; k < a.multiplicity; ++k) edges.push_back({a.source, a.target});
    return edges;
}

void DirectedMultigraph::set_words(std::vector<std::vector<std::string>> words) {
    if (!words.empty() && words.size() != arcs_.size()) throw ArgumentError("word lists must align with arcs");
    words_ = std::move(words);
}

DirectedMultigraph build_multigraph(const std::vector<MetaphorRecord>& records, std::size_t vertex_count) {
    std::vector<Arc> edges;
    edges.reserve(records.size());
    for (const auto& r : records) edges.push_back({r.source.value, r.target.value});
    DirectedMultigraph g(vertex_count, edges);

    std::vector<std::vector<std::string>> words(g.pair_count());
    auto arcs = g.arcs();
    for (const auto& r : records) {
        auto it = std::lower_bound(arcs.begin(), arcs.end(), r, [](const WeightedArc& a, const MetaphorRecord& rec) {
            return std::tie(a.source, a.target) < std::tie(rec.source.value, rec.target.value);
        });
        words[static_cast<std::size_t>(it - arcs.begin())].push_back(r.word);
    }
    g.set_words(std::move(words));
    return g;
}

DirectedGraph project_simple(const DirectedMultigraph& g) {
    std::vector<Arc> arcs;
    arcs.reserve(g.pair_count());
    for (const auto& a : g.arcs()) arcs.push_back({a.source, a.target});
    return DirectedGraph(g.vertex_count(), std::move(arcs));
}

DirectedMultigraph as_multigraph(const DirectedGraph& g) {
    return DirectedMultigraph(g.vertex_count(), g.arcs());
}

namespace {

template <typename InDeg, typename OutDeg>
std::vector<DegreeRecord> degree_records(std::size_t n, const CategorySizeTable& sizes, InDeg in, OutDeg out) {
    if (sizes.sizes.size() < n) throw ArgumentError("category size table does not cover every vertex");
    std::vector<DegreeRecord> records;
    records.reserve(n);
    for (VertexId v = 0; v < n; ++v) {
        DegreeRecord r;
        r.category = CategoryId{v};
        r.in_degree = in(v);
        r.out_degree = out(v);
        r.size = sizes.sizes[v];
        if (r.size <= 0) throw ArgumentError("category size must be positive");
        r.in_density = static_cast<double>(r.in_degree) / static_cast<double>(r.size);
        r.out_density = static_cast<double>(r.out_degree) / static_cast<double>(r.size);
        records.push_back(r);
    }
    return records;
}

}  // namespace

std::vector<DegreeRecord> degrees(const DirectedGraph& g, const CategorySizeTable& sizes) {
    return degree_records(
        g.vertex_count(), sizes, [&](VertexId v) { return static_cast<std::int64_t>(g.in_degree(v)); },
        [&](VertexId v) { return static_cast<std::int64_t>(g.out_degree(v)); });
}

std::vector<DegreeRecord> degrees(const DirectedMultigraph& g, const CategorySizeTable& sizes) {
    return degree_records(
        g.vertex_count(), sizes, [&](VertexId v) { return g.in_degree(v); },
        [&](VertexId v) { return g.out_degree(v); });
}

}  // namespace metnet
