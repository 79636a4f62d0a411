#include "metnet/motifs.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "metnet/error.hpp"

namespace metnet {
namespace {

// bit index of arc i->j in a triad code
constexpr int triad_bit(int i, int j) {
    constexpr int table[3][3] = {{-1, 0, 1}, {2, -1, 3}, {4, 5, -1}};
    return table[i][j];
}

bool has(std::uint32_t code, int i, int j) { return (code >> triad_bit(i, j)) & 1u; }

std::uint32_t permute(std::uint32_t code, const std::array<int, 3>& p) {
    std::uint32_t out = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j && has(code, i, j)) out |= 1u << triad_bit(p[i], p[j]);
    return out;
}

const std::array<std::uint32_t, 64>& canonical_table() {
    static const std::array<std::uint32_t, 64> table = [] {
        std::array<std::uint32_t, 64> t{};
        std::array<int, 3> p{0, 1, 2};
        for (std::uint32_t c = 0; c < 64; ++c) {
            std::uint32_t best = c;
            std::array<int, 3> q = p;
            do best = std::min(best, permute(c, q));
            while (std::next_permutation(q.begin(), q.end()));
            t[c] = best;
        }
        return t;
    }();
    return table;
}

bool connected(std::uint32_t code) {
    auto linked = [&](int i, int j) { return has(code, i, j) || has(code, j, i); };
    int links = linked(0, 1) + linked(0, 2) + linked(1, 2);
    return links >= 2;
}

MotifClass describe_triad(std::uint32_t code) {
    auto mutual = [&](int i, int j) { return has(code, i, j) && has(code, j, i); };
    auto asym = [&](int i, int j) { return has(code, i, j) != has(code, j, i); };
    int m = 0, a = 0;
    for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
        m += mutual(i, j);
        a += asym(i, j);
    }
    auto out_deg = [&](int v) { return has(code, v, (v + 1) % 3) + has(code, v, (v + 2) % 3); };
    auto in_deg = [&](int v) { return has(code, (v + 1) % 3, v) + has(code, (v + 2) % 3, v); };
    // vertex not part of the single mutual dyad (m == 1)
    auto outsider = [&] {
        if (mutual(0, 1)) return 2;
        if (mutual(0, 2)) return 1;
        return 0;
    };

    MotifClass cls;
    cls.size = 3;
    cls.code = code;
    if (m == 0 && a == 2) {
        bool out_star = false, in_star = false;
        for (int v = 0; v < 3; ++v) {
            out_star |= out_deg(v) == 2;
            in_star |= in_deg(v) == 2;
        }
        if (out_star) cls = {3, code, "021D", "out-star A<-B->C"};
        else if (in_star) cls = {3, code, "021U", "in-star A->B<-C"};
        else cls = {3, code, "021C", "chain A->B->C"};
    } else if (m == 1 && a == 1) {
        const int r = outsider();
        const bool r_sends = out_deg(r) == 1;
        if (r_sends) cls = {3, code, "111D", "A<->B<-C"};
        else cls = {3, code, "111U", "A<->B->C"};
    } else if (m == 0 && a == 3) {
        bool cycle = out_deg(0) == 1 && out_deg(1) == 1 && out_deg(2) == 1;
        if (cycle) cls = {3, code, "030C", "cycle A->B->C->A"};
        else cls = {3, code, "030T", "feed-forward A->B->C, A->C"};
    } else if (m == 2 && a == 0) {
        cls = {3, code, "201", "A<->B<->C"};
    } else if (m == 1 && a == 2) {
        const int r = outsider();
        if (out_deg(r) == 2) cls = {3, code, "120D", "A<-B->C, A<->C"};
        else if (in_deg(r) == 2) cls = {3, code, "120U", "A->B<-C, A<->C"};
        else cls = {3, code, "120C", "A->B->C, A<->C"};
    } else if (m == 2 && a == 1) {
        cls = {3, code, "210", "A->B<->C, A<->C"};
    } else if (m == 3) {
        cls = {3, code, "300", "complete mutual triangle"};
    } else {
        throw ArgumentError("triad code " + std::to_string(code) + " is not connected");
    }
    return cls;
}

std::vector<std::vector<VertexId>> undirected_neighbors(const DirectedGraph& g) {
    std::vector<std::vector<VertexId>> nb(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        auto out = g.out_neighbors(v);
        auto in = g.in_neighbors(v);
        nb[v].reserve(out.size() + in.size());
        std::set_union(out.begin(), out.end(), in.begin(), in.end(), std::back_inserter(nb[v]));
    }
    return nb;
}

}  // namespace

std::uint32_t canonical_triad_code(std::uint32_t raw) { return canonical_table().at(raw & 63u); }

std::uint32_t triad_code(const DirectedGraph& g, VertexId a, VertexId b, VertexId c) {
    const VertexId v[3] = {a, b, c};
    std::uint32_t code = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j && g.has_arc(v[i], v[j])) code |= 1u << triad_bit(i, j);
    return canonical_triad_code(code);
}

const std::vector<MotifClass>& motif_classes(int size) {
    static const std::vector<MotifClass> dyads = {{2, 1, "single", "single arc A->B"},
                                                  {2, 3, "mutual", "mutual dyad A<->B"}};
    static const std::vector<MotifClass> triads = [] {
        std::vector<MotifClass> out;
        const auto& table = canonical_table();
        for (std::uint32_t c = 0; c < 64; ++c)
            if (table[c] == c && connected(c)) out.push_back(describe_triad(c));
        return out;
    }();
    if (size == 2) return dyads;
    if (size == 3) return triads;
    throw ArgumentError("motif size must be 2 or 3, got " + std::to_string(size));
}

const MotifClass& motif_class(int size, std::uint32_t code) {
    for (const auto& c : motif_classes(size))
        if (c.code == code) return c;
    throw ArgumentError("no connected motif class with code " + std::to_string(code));
}

MotifCensus census(const DirectedGraph& g, int size) {
    MotifCensus counts;
    for (const auto& c : motif_classes(size)) counts[c.code] = 0;

    if (size == 2) {
        for (const auto& a : g.arcs()) {
            if (g.has_arc(a.target, a.source)) {
                if (a.source < a.target) ++counts[3];
            } else {
                ++counts[1];
            }
        }
        return counts;
    }

    // Each connected triple {v < u, w} is reached from its smallest adjacent pair exactly once.
    const auto nb = undirected_neighbors(g);
    const std::size_t n = g.vertex_count();
    std::vector<VertexId> mark(n, 0);
    std::array<std::int64_t, 64> raw{};
    for (VertexId v = 0; v < n; ++v) {
        for (VertexId w : nb[v]) mark[w] = v + 1;
        for (VertexId u : nb[v]) {
            if (u <= v) continue;
            for (VertexId w : nb[v])
                if (w > u) ++raw[triad_code(g, v, u, w)];
            for (VertexId w : nb[u])
                if (w > v && w != u && mark[w] != v + 1) ++raw[triad_code(g, v, u, w)];
        }
    }
    for (std::uint32_t c = 0; c < 64; ++c)
        if (raw[c]) counts[c] += raw[c];
    return counts;
}

const MotifScore& MotifReport::score(std::uint32_t code) const {
    for (const auto& s : scores)
        if (s.cls.code == code) return s;
    throw ArgumentError("motif report has no class with code " + std::to_string(code));
}

MotifReport motif_significance(const DirectedGraph& g, const MotifOptions& options) {
    if (options.replicates < 2) throw ArgumentError("motif significance needs at least 2 replicates");
    const int size = options.size;
    const MotifCensus real = census(g, size);

    Metric metric{"motif_census_" + std::to_string(size), [size](const DirectedMultigraph& rep) {
                      MetricValue v;
                      for (const auto& [code, count] : census(project_simple(rep), size))
                          v[static_cast<std::int64_t>(code)] = static_cast<double>(count);
                      return v;
                  }};
    EnsembleOptions ens;
    ens.model = NullModel::ConfigSimple;
    ens.replicates = options.replicates;
    ens.seed = options.seed;
    ens.swaps = options.swaps;
    ens.sample_std = options.sample_std;
    ens.threads = options.threads;
    const EnsembleStats stats = run_ensemble(as_multigraph(g), metric, ens);

    MotifReport report;
    report.size = size;
    report.replicates = options.replicates;
    report.seed = options.seed;
    report.swaps = stats.swaps;
    report.threshold = options.threshold;
    for (const auto& cls : motif_classes(size)) {
        MotifScore s;
        s.cls = cls;
        s.n_real = real.at(cls.code);
        if (auto k = stats.find(cls.code)) {
            s.rand_mean = stats.mean[*k];
            s.rand_std = stats.std[*k];
        }
        if (s.rand_std > 0.0) {
            s.z = (static_cast<double>(s.n_real) - s.rand_mean) / s.rand_std;
            if (*s.z > options.threshold) s.flag = "motif";
            else if (*s.z < -options.threshold) s.flag = "antimotif";
        } else {
            s.flag = "undefined";
        }
        report.scores.push_back(std::move(s));
    }
    return report;
}

std::vector<TransitivityRecord> outward_transitivity(const DirectedGraph& g, TransitivityClosure closure) {
    std::vector<TransitivityRecord> out;
    out.reserve(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        TransitivityRecord r;
        r.category = CategoryId{v};
        for (VertexId h : g.out_neighbors(v)) {
            for (VertexId w : g.out_neighbors(h)) {
                if (w == v) continue;
                ++r.paths;
                const bool closed = closure == TransitivityClosure::ReturnArc ? g.has_arc(w, v) : g.has_arc(v, w);
                if (closed) ++r.closed;
            }
        }
        if (r.paths > 0) r.value = static_cast<double>(r.closed) / static_cast<double>(r.paths);
        out.push_back(r);
    }
    return out;
}

}  // namespace metnet
