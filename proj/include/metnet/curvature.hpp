#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "metnet/graph.hpp"
#include "metnet/histogram.hpp"
#include "metnet/transport.hpp"

namespace metnet {

enum class OllivierStatus {
    Defined,
    EmptyInSupport,   ///< the source has no in-edges
    EmptyOutSupport,  ///< the target has no out-edges
    Unreachable,      ///< some mass cannot reach the other support
};

std::string_view to_string(OllivierStatus s);

struct EdgeCurvature {
    VertexId source = 0;
    VertexId target = 0;
    std::int64_t multiplicity = 0;
    std::int64_t forman = 0;
    std::optional<double> ollivier;
    OllivierStatus status = OllivierStatus::Defined;
};

/// F = 2 - #in(source) - #out(target), multiplicity-weighted. Ollivier left unset.
std::vector<EdgeCurvature> forman_all(const DirectedMultigraph& g);

/// Directed BFS hop counts on the simple projection: result[i][j] is the
/// distance from sources[i] to targets[j], or kNoPath.
std::vector<std::vector<std::int64_t>> shortest_hops(const DirectedMultigraph& g, const std::vector<VertexId>& sources,
                                                     const std::vector<VertexId>& targets);

/// O(u,v) = 1 - W1(mu_in(u), mu_out(v)) over hop distances in the full graph.
/// mu_in(u) weights each in-neighbor x by mult(x,u)/#in(u); mu_out(v) weights
/// each out-neighbor y by mult(v,y)/#out(v). The transport is solved exactly
/// in integers. Forman is filled as well.
std::vector<EdgeCurvature> curvature_all(const DirectedMultigraph& g, unsigned threads = 1);

struct CurvatureHistograms {
    Histogram forman;
    Histogram ollivier;  ///< defined values only
    std::int64_t ollivier_undefined = 0;
};

CurvatureHistograms curvature_histograms(const std::vector<EdgeCurvature>& records, BinSpec forman_bins,
                                         BinSpec ollivier_bins);

}  // namespace metnet
