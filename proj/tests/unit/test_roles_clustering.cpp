#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "metnet/clustering.hpp"
#include "metnet/error.hpp"
#include "metnet/roles.hpp"
#include "support.hpp"

using namespace metnet;

namespace {

using Cluster = std::vector<std::uint32_t>;
using Tree = std::set<Cluster>;  // internal clusters; determines a binary tree

Tree tree_of(const Dendrogram& d) {
    Tree t;
    for (std::uint32_t k = 0; k < d.merges.size(); ++k) t.insert(d.members(static_cast<std::uint32_t>(d.leaves + k)));
    return t;
}

// Ward distance between clusters straight from the leaf matrix.
double ward_closed_form(const RoleDistanceMatrix& m, const Cluster& a, const Cluster& b) {
    auto mean = [&](const Cluster& x, const Cluster& y) {
        double s = 0;
        for (auto i : x)
            for (auto j : y) s += m(i, j);
        return s / static_cast<double>(x.size() * y.size());
    };
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    return na * nb / (na + nb) * (2 * mean(a, b) - mean(a, a) - mean(b, b));
}

Cluster join(const Cluster& a, const Cluster& b) {
    Cluster c = a;
    c.insert(c.end(), b.begin(), b.end());
    std::sort(c.begin(), c.end());
    return c;
}

// Follows every minimum-distance choice; returns all trees with each cluster's height.
void all_ward_trees(const RoleDistanceMatrix& m, std::vector<Cluster> parts, Tree done, double eps,
                    std::set<Tree>& out) {
    if (parts.size() == 1) {
        out.insert(done);
        return;
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j) best = std::min(best, ward_closed_form(m, parts[i], parts[j]));
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
            if (ward_closed_form(m, parts[i], parts[j]) - best > eps * std::abs(best)) continue;
            auto next = parts;
            const Cluster c = join(parts[i], parts[j]);
            next.erase(next.begin() + static_cast<std::ptrdiff_t>(j));
            next[i] = c;
            Tree t = done;
            t.insert(c);
            all_ward_trees(m, next, t, eps, out);
        }
}

std::set<Tree> oracle_trees(const RoleDistanceMatrix& m, double eps) {
    std::vector<Cluster> parts;
    for (std::uint32_t i = 0; i < m.size(); ++i) parts.push_back({i});
    std::set<Tree> out;
    all_ward_trees(m, parts, {}, eps, out);
    return out;
}

RoleDistanceMatrix random_matrix(std::size_t n, std::mt19937_64& rng, std::vector<double> levels) {
    RoleDistanceMatrix m(n);
    std::uniform_int_distribution<std::size_t> pick(0, levels.size() - 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, levels[pick(rng)]);
    return m;
}

RoleDistanceMatrix equidistant(std::size_t n) {
    RoleDistanceMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, 1.0);
    return m;
}

std::set<Tree> trees_of(const DendrogramSet& s) {
    std::set<Tree> out;
    for (const auto& d : s.dendrograms) out.insert(tree_of(d));
    return out;
}

}  // namespace

TEST(Jaccard, ReducedFractions) {
    const std::vector<VertexId> a{1, 2}, b{2, 3}, e{}, c{1, 2, 3, 4};
    auto j = jaccard_distance(a, b);
    EXPECT_EQ(j.num, 2);
    EXPECT_EQ(j.den, 3);
    j = jaccard_distance(e, e);
    EXPECT_EQ(j.num, 0);
    EXPECT_EQ(j.den, 1);
    j = jaccard_distance(a, c);
    EXPECT_EQ(j.num, 1);
    EXPECT_EQ(j.den, 2);
    j = jaccard_distance(a, e);
    EXPECT_EQ(j.num, 1);
    EXPECT_EQ(j.den, 1);
}

TEST(RoleDistance, MatchesSetOracle) {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 20; ++t) {
        const auto g = oracle::random_simple_graph(5 + t % 12, 0.25, rng);
        const auto d = role_distance(g);
        const auto adj = oracle::adjacency(g);
        const std::size_t n = g.vertex_count();
        auto jac = [&](std::size_t u, std::size_t v, bool out) {
            int inter = 0, uni = 0;
            for (std::size_t w = 0; w < n; ++w) {
                const bool x = out ? adj[u][w] : adj[w][u];
                const bool y = out ? adj[v][w] : adj[w][v];
                inter += x && y;
                uni += x || y;
            }
            return uni ? 1.0 - double(inter) / uni : 0.0;
        };
        for (std::size_t u = 0; u < n; ++u) {
            EXPECT_EQ(d(u, u), 0.0);
            for (std::size_t v = 0; v < n; ++v) {
                EXPECT_NEAR(d(u, v), jac(u, v, false) + jac(u, v, true), 1e-12);
                EXPECT_EQ(d(u, v), d(v, u));
                EXPECT_GE(d(u, v), 0.0);
                EXPECT_LE(d(u, v), 2.0);
            }
            EXPECT_EQ(g.in_degree(VertexId(u)) == 0,
                      std::count(d.empty_in.begin(), d.empty_in.end(), VertexId(u)) == 1);
            EXPECT_EQ(g.out_degree(VertexId(u)) == 0,
                      std::count(d.empty_out.begin(), d.empty_out.end(), VertexId(u)) == 1);
        }
    }
}

TEST(RoleDistance, EqualRationalsGiveEqualDoubles) {
    // 1/3 + 1/6 from one pair and 1/2 + 0 from another must be the same double
    // in-neighborhoods: 0:{3,4,5}, 1:{3,4} -> 1/3; out: 0:{6..11}, 1: five of them -> 1/6
    std::vector<Arc> arcs{{3, 0}, {4, 0}, {5, 0}, {3, 1}, {4, 1}};
    for (VertexId w = 6; w < 12; ++w) arcs.push_back({0, w});
    for (VertexId w = 6; w < 11; ++w) arcs.push_back({1, w});
    // 2:{3,4} vs 12:{3} -> 1/2, out equal
    arcs.insert(arcs.end(), {{3, 2}, {4, 2}, {3, 12}, {2, 6}, {12, 6}});
    const auto d = role_distance(DirectedGraph(13, arcs));
    EXPECT_EQ(d(0, 1), 0.5);
    EXPECT_EQ(d(2, 12), 0.5);
    EXPECT_EQ(d(0, 1), d(2, 12));
}

TEST(LanceWilliams, WardCoefficients) {
    EXPECT_DOUBLE_EQ(lance_williams_ward(1, 1, 1, 1, 1, 1), 1.0);
    EXPECT_DOUBLE_EQ(lance_williams_ward(2, 4, 3, 1, 2, 3), (4 * 2 + 5 * 4 - 3 * 3) / 6.0);
}

TEST(LanceWilliams, AgreesWithClosedForm) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    for (int t = 0; t < 50; ++t) {
        RoleDistanceMatrix m(7);
        for (std::size_t i = 0; i < 7; ++i)
            for (std::size_t j = i + 1; j < 7; ++j) m.set(i, j, u(rng));
        const Cluster a{0, 1}, b{2, 3, 4}, k{5, 6};
        const double lw = lance_williams_ward(ward_closed_form(m, a, k), ward_closed_form(m, b, k),
                                              ward_closed_form(m, a, b), a.size(), b.size(), k.size());
        EXPECT_NEAR(lw, ward_closed_form(m, join(a, b), k), 1e-12);
    }
}

TEST(WardHca, GenericDistancesGiveOneTreeWithClosedFormHeights) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.05, 2.0);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2 + t % 12;
        RoleDistanceMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, u(rng));
        const auto s = ward_hca_all(m);
        ASSERT_EQ(s.dendrograms.size(), 1u);
        EXPECT_FALSE(s.truncated);
        const auto& d = s.dendrograms[0];
        ASSERT_EQ(d.merges.size(), n - 1);
        const auto want = oracle_trees(m, 1e-12);
        ASSERT_EQ(want.size(), 1u);
        EXPECT_EQ(tree_of(d), *want.begin());
        double prev = -1;
        for (std::uint32_t k = 0; k < d.merges.size(); ++k) {
            const auto& mg = d.merges[k];
            EXPECT_NEAR(mg.height, ward_closed_form(m, d.members(mg.left), d.members(mg.right)), 1e-9);
            EXPECT_GE(mg.height, prev - 1e-12);
            prev = mg.height;
            EXPECT_EQ(mg.size, d.members(std::uint32_t(n + k)).size());
            EXPECT_LT(d.members(mg.left).front(), d.members(mg.right).front());
        }
    }
}

TEST(WardHca, EquidistantCountsAreDoubleFactorials) {
    const std::size_t expect[] = {1, 1, 1, 3, 15, 105, 945};
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto s = ward_hca_all(equidistant(n));
        EXPECT_EQ(s.dendrograms.size(), expect[n]) << n;
        EXPECT_FALSE(s.truncated);
        EXPECT_EQ(trees_of(s).size(), expect[n]);
    }
}

TEST(WardHca, CapTruncates) {
    WardOptions o;
    o.cap = 10000;
    const auto s = ward_hca_all(equidistant(7), o);  // 10395 exist
    EXPECT_TRUE(s.truncated);
    EXPECT_EQ(s.dendrograms.size(), 10000u);
    o.cap = 10395;
    const auto full = ward_hca_all(equidistant(7), o);
    EXPECT_FALSE(full.truncated);
    EXPECT_EQ(full.dendrograms.size(), 10395u);
    o.cap = 15;
    const auto exact = ward_hca_all(equidistant(4), o);
    EXPECT_FALSE(exact.truncated);
    EXPECT_EQ(exact.dendrograms.size(), 15u);
}

TEST(WardHca, MatchesBruteForceTieEnumeration) {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 3 + t % 4;
        const auto m = random_matrix(n, rng, {0.5, 1.0, 1.5});
        WardOptions o;
        o.tie_epsilon = 1e-9;
        const auto s = ward_hca_all(m, o);
        EXPECT_EQ(trees_of(s), oracle_trees(m, 1e-9)) << "trial " << t;
        for (std::size_t k = 1; k < s.dendrograms.size(); ++k)
            EXPECT_LT(s.dendrograms[k - 1].canonical(), s.dendrograms[k].canonical());
    }
}

TEST(WardHca, PermutationInvariant) {
    std::mt19937_64 rng(43);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 4 + t % 5;
        const auto m = random_matrix(n, rng, {0.5, 1.0, 1.5, 2.0});
        std::vector<std::uint32_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0u);
        std::shuffle(perm.begin(), perm.end(), rng);
        RoleDistanceMatrix p(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) p.set(perm[i], perm[j], m(i, j));
        WardOptions o;
        o.tie_epsilon = 1e-9;
        std::set<Tree> mapped;
        for (const auto& tree : trees_of(ward_hca_all(m, o))) {
            Tree relabeled;
            for (const auto& c : tree) {
                Cluster x;
                for (auto leaf : c) x.push_back(perm[leaf]);
                std::sort(x.begin(), x.end());
                relabeled.insert(x);
            }
            mapped.insert(relabeled);
        }
        EXPECT_EQ(mapped, trees_of(ward_hca_all(p, o))) << "trial " << t;
    }
}

TEST(WardHca, IndependentTiedPairsCollapseToOneTree) {
    RoleDistanceMatrix m(4);
    m.set(0, 1, 1.0);
    m.set(2, 3, 1.0);
    m.set(0, 2, 2.0);
    m.set(0, 3, 2.0);
    m.set(1, 2, 2.0);
    m.set(1, 3, 2.0);
    const auto s = ward_hca_all(m);
    ASSERT_EQ(s.dendrograms.size(), 1u);
    const auto& d = s.dendrograms[0];
    EXPECT_EQ(d.canonical(), "((0,1),(2,3))");
    EXPECT_DOUBLE_EQ(d.merges.back().height, ward_closed_form(m, {0, 1}, {2, 3}));
    EXPECT_DOUBLE_EQ(d.merges.back().height, 3.0);
}

TEST(Dendrogram, NewickAndCanonical) {
    RoleDistanceMatrix m(3);
    m.set(0, 1, 0.5);
    m.set(0, 2, 2.0);
    m.set(1, 2, 2.0);
    const auto s = ward_hca_all(m);
    ASSERT_EQ(s.dendrograms.size(), 1u);
    const auto& d = s.dendrograms[0];
    EXPECT_EQ(d.canonical(), "((0,1),2)");
    // root: (2*2 + 2*2 - 0.5) / 3 = 2.5
    EXPECT_EQ(d.newick({"light", "heat", "food and eating"}), "((light:0.5,heat:0.5):2,'food and eating':2.5);");
    EXPECT_THROW(d.newick({"a"}), ArgumentError);
}

TEST(ClusterStability, EquidistantTriple) {
    const auto s = ward_hca_all(equidistant(3));
    const auto rows = cluster_stability(s);
    ASSERT_EQ(rows.size(), 6u);
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_EQ(rows[k].members.size(), 2u);
        EXPECT_NEAR(rows[k].subtree_fraction, 1.0 / 3, 1e-12);
        EXPECT_NEAR(rows[k].leafset_fraction, 1.0 / 3, 1e-12);
    }
    for (std::size_t k = 3; k < 6; ++k) {
        EXPECT_EQ(rows[k].members, (std::vector<std::uint32_t>{0, 1, 2}));
        EXPECT_NEAR(rows[k].subtree_fraction, 1.0 / 3, 1e-12);
        EXPECT_EQ(rows[k].leafset_fraction, 1.0);
    }
}

TEST(ClusterStability, FractionsMatchCounting) {
    std::mt19937_64 rng(47);
    for (int t = 0; t < 10; ++t) {
        const auto m = random_matrix(6, rng, {0.5, 1.0, 1.5});
        WardOptions o;
        o.tie_epsilon = 1e-9;
        const auto s = ward_hca_all(m, o);
        const double total = static_cast<double>(s.dendrograms.size());
        for (const auto& row : cluster_stability(s)) {
            int with_leafset = 0;
            for (const auto& d : s.dendrograms) with_leafset += tree_of(d).count(row.members);
            EXPECT_NEAR(row.leafset_fraction, with_leafset / total, 1e-12);
            EXPECT_LE(row.subtree_fraction, row.leafset_fraction + 1e-12);
            EXPECT_GT(row.subtree_fraction, 0.0);
        }
    }
}

TEST(WardHca, RejectsBadOptions) {
    WardOptions o;
    o.cap = 0;
    EXPECT_THROW(ward_hca_all(equidistant(3), o), ArgumentError);
    o.cap = 5;
    o.tie_epsilon = -1;
    EXPECT_THROW(ward_hca_all(equidistant(3), o), ArgumentError);
}
