#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "metnet/graph.hpp"
#include "metnet/null_models.hpp"

namespace metnet {

/// Isomorphism class of a connected directed subgraph on 2 or 3 vertices.
///
/// Adjacency bits for an ordered vertex triple (0,1,2):
///   bit0 0->1, bit1 0->2, bit2 1->0, bit3 1->2, bit4 2->0, bit5 2->1
/// and for a pair: bit0 0->1, bit1 1->0. The canonical code is the minimum of
/// the code over all vertex permutations.
struct MotifClass {
    int size = 3;
    std::uint32_t code = 0;
    std::string triad;  ///< Holland-Leinhardt MAN label ("021C", ...) or "single"/"mutual"
    std::string label;  ///< human-readable shape
};

/// The 2 connected dyad classes or the 13 connected triad classes, ordered by code.
const std::vector<MotifClass>& motif_classes(int size);
const MotifClass& motif_class(int size, std::uint32_t code);

/// Canonical code of the triad induced by (a, b, c).
std::uint32_t triad_code(const DirectedGraph& g, VertexId a, VertexId b, VertexId c);
std::uint32_t canonical_triad_code(std::uint32_t raw);

/// Canonical code -> count over every vertex set of the given size whose induced
/// subgraph is connected. Every class of that size is present (zero counts included).
/// Throws ArgumentError for sizes other than 2 and 3.
using MotifCensus = std::map<std::uint32_t, std::int64_t>;
MotifCensus census(const DirectedGraph& g, int size);

struct MotifScore {
    MotifClass cls;
    std::int64_t n_real = 0;
    double rand_mean = 0.0;
    double rand_std = 0.0;
    std::optional<double> z;  ///< empty when rand_std == 0
    std::string flag;         ///< "motif", "antimotif", "undefined" or ""
};

struct MotifReport {
    int size = 3;
    int replicates = 0;
    std::uint64_t seed = 0;
    std::uint64_t swaps = 0;
    double threshold = 2.0;
    std::vector<MotifScore> scores;

    const MotifScore& score(std::uint32_t code) const;
};

struct MotifOptions {
    int size = 3;
    int replicates = 1000;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> swaps;
    double threshold = 2.0;
    bool sample_std = false;
    unsigned threads = 1;
};

/// Census of g against R simple-configuration randomizations. Z = (N_real - mean) / std;
/// |Z| > threshold marks a motif (positive) or antimotif (negative).
MotifReport motif_significance(const DirectedGraph& g, const MotifOptions& options);

/// Which arc closes a 2-path v->h->w for the outward transitivity of v.
enum class TransitivityClosure {
    ReturnArc,   ///< w->v, closing a directed 3-cycle through v (default)
    ForwardArc,  ///< v->w, the transitive shortcut
};

struct TransitivityRecord {
    CategoryId category;
    std::int64_t paths = 0;   ///< #K: 2-paths v->h->w with w != v
    std::int64_t closed = 0;  ///< paths whose closing arc is present
    std::optional<double> value;
};

std::vector<TransitivityRecord> outward_transitivity(const DirectedGraph& g,
                                                     TransitivityClosure closure = TransitivityClosure::ReturnArc);

}  // namespace metnet
