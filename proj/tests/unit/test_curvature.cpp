#include <gtest/gtest.h>

#include <random>

#include "metnet/curvature.hpp"
#include "support.hpp"

using namespace metnet;

namespace {

const EdgeCurvature& edge(const std::vector<EdgeCurvature>& r, VertexId u, VertexId v) {
    for (const auto& e : r)
        if (e.source == u && e.target == v) return e;
    throw std::runtime_error("edge not found");
}

std::vector<std::vector<std::int64_t>> floyd_warshall(const DirectedMultigraph& g) {
    const std::size_t n = g.vertex_count();
    const std::int64_t inf = 1 << 20;
    std::vector<std::vector<std::int64_t>> d(n, std::vector<std::int64_t>(n, inf));
    for (std::size_t v = 0; v < n; ++v) d[v][v] = 0;
    for (const auto& a : g.arcs()) d[a.source][a.target] = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    for (auto& row : d)
        for (auto& x : row)
            if (x >= inf) x = kNoPath;
    return d;
}

}  // namespace

TEST(Forman, WeightedDegrees) {
    // three edges into 0, two edges out of 1
    const DirectedMultigraph g(5, std::vector<WeightedArc>{{2, 0, 2}, {3, 0, 1}, {0, 1, 1}, {1, 4, 2}});
    const auto r = forman_all(g);
    EXPECT_EQ(edge(r, 0, 1).forman, -3);
    EXPECT_EQ(edge(r, 2, 0).forman, 2 - 0 - 1);
    EXPECT_EQ(edge(r, 1, 4).forman, 2 - 1 - 0);
    EXPECT_EQ(r.size(), g.pair_count());
}

TEST(Ollivier, PathHasMinimumCurvature) {
    // x -> u -> v -> y: the only mass moves three hops
    const DirectedMultigraph g(4, std::vector<Arc>{{0, 1}, {1, 2}, {2, 3}});
    const auto r = curvature_all(g);
    const auto& e = edge(r, 1, 2);
    ASSERT_TRUE(e.ollivier);
    EXPECT_EQ(*e.ollivier, -2.0);
    EXPECT_EQ(edge(r, 0, 1).status, OllivierStatus::EmptyInSupport);
    EXPECT_EQ(edge(r, 2, 3).status, OllivierStatus::EmptyOutSupport);
    EXPECT_EQ(to_string(OllivierStatus::EmptyOutSupport), "empty_out");
}

TEST(Ollivier, MutualPairAndTriangle) {
    const auto mutual = curvature_all(DirectedMultigraph(2, std::vector<Arc>{{0, 1}, {1, 0}}));
    // mu_in(0) = {1}, mu_out(1) = {0}, one hop from 1 to 0
    EXPECT_EQ(*edge(mutual, 0, 1).ollivier, 0.0);
    // cycle 0->1->2->0: mu_in(0) = {2}, mu_out(1) = {2}: no movement
    const auto cyc = curvature_all(DirectedMultigraph(3, std::vector<Arc>{{0, 1}, {1, 2}, {2, 0}}));
    EXPECT_EQ(*edge(cyc, 0, 1).ollivier, 1.0);
}

TEST(Ollivier, MultiplicityWeightsTheMeasures) {
    // in(1): 0 (x3) and 4 (x1); out(2): 3 (x1) and 0 (x1); 0 -> 1 -> 2
    const DirectedMultigraph g(5, std::vector<WeightedArc>{{0, 1, 3}, {4, 1, 1}, {1, 2, 1}, {2, 3, 1}, {2, 0, 1}});
    const auto r = curvature_all(g);
    // hops: 0->0 = 0, every other pair = 3
    // optimum: 0 keeps 1/2 in place, then 1/4 from 0 and 1/4 from 4 travel three hops to 3
    const auto& e = edge(r, 1, 2);
    ASSERT_TRUE(e.ollivier);
    EXPECT_DOUBLE_EQ(*e.ollivier, 1.0 - 1.5);
}

TEST(ShortestHops, MatchesFloydWarshall) {
    std::mt19937_64 rng(61);
    for (int t = 0; t < 30; ++t) {
        const auto g = oracle::random_multigraph(4 + t % 15, 3 + 2 * t, rng);
        std::vector<VertexId> all(g.vertex_count());
        for (VertexId v = 0; v < all.size(); ++v) all[v] = v;
        EXPECT_EQ(shortest_hops(g, all, all), floyd_warshall(g));
    }
}

TEST(Ollivier, MatchesIndependentTransport) {
    std::mt19937_64 rng(67);
    for (int t = 0; t < 20; ++t) {
        const auto g = oracle::duplication_multigraph(6 + t % 10, 20 + 3 * t, 0.3, rng);
        const auto d = floyd_warshall(g);
        for (const auto& e : curvature_all(g)) {
            const auto in = g.in_arcs(e.source);
            const auto out = g.out_arcs(e.target);
            EXPECT_EQ(e.forman, 2 - g.in_degree(e.source) - g.out_degree(e.target));
            if (in.empty() || out.empty()) {
                EXPECT_FALSE(e.ollivier);
                continue;
            }
            TransportProblem p;
            for (const auto& x : in) p.source_mass.push_back(double(x.multiplicity) / double(g.in_degree(e.source)));
            for (const auto& y : out) p.target_mass.push_back(double(y.multiplicity) / double(g.out_degree(e.target)));
            for (const auto& x : in) {
                auto& row = p.cost.emplace_back();
                for (const auto& y : out) row.push_back(d[x.source][y.target]);
            }
            ASSERT_TRUE(e.ollivier);
            EXPECT_NEAR(*e.ollivier, 1.0 - w1(p), 1e-9);
            EXPECT_LE(*e.ollivier, 1.0);
            EXPECT_GE(*e.ollivier, -2.0);
            EXPECT_EQ(e.status, OllivierStatus::Defined);
        }
    }
}

TEST(Ollivier, ThreadIndependent) {
    std::mt19937_64 rng(71);
    const auto g = oracle::duplication_multigraph(25, 150, 0.4, rng);
    const auto a = curvature_all(g, 1);
    const auto b = curvature_all(g, 4);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_EQ(a[k].ollivier, b[k].ollivier);
        EXPECT_EQ(a[k].status, b[k].status);
    }
}

TEST(CurvatureHistograms, CountsDefinedAndUndefined) {
    const DirectedMultigraph g(4, std::vector<Arc>{{0, 1}, {1, 2}, {2, 3}});
    const auto h = curvature_histograms(curvature_all(g), BinSpec{0.0, 1.0}, BinSpec{-2.0, 0.05});
    EXPECT_EQ(h.forman.total(), 3);
    EXPECT_EQ(h.ollivier.total(), 1);
    EXPECT_EQ(h.ollivier_undefined, 2);
    EXPECT_EQ(h.ollivier.counts.begin()->first, 0);
}
