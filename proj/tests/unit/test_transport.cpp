#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "metnet/transport.hpp"

using namespace metnet;

namespace {

// Splits every supply and demand into unit atoms and tries every assignment.
// Integral transport optima are attained at integral points, so this is exact.
std::optional<std::int64_t> assignment_oracle(const std::vector<std::int64_t>& supply,
                                              const std::vector<std::int64_t>& demand,
                                              const std::vector<std::vector<std::int64_t>>& cost) {
    std::vector<std::size_t> src, dst;
    for (std::size_t i = 0; i < supply.size(); ++i) src.insert(src.end(), supply[i], i);
    for (std::size_t j = 0; j < demand.size(); ++j) dst.insert(dst.end(), demand[j], j);
    std::sort(dst.begin(), dst.end());
    std::optional<std::int64_t> best;
    do {
        std::int64_t c = 0;
        bool ok = true;
        for (std::size_t k = 0; k < src.size() && ok; ++k) {
            const auto v = cost[src[k]][dst[k]];
            if (v == kNoPath) ok = false;
            else c += v;
        }
        if (ok && (!best || c < *best)) best = c;
    } while (std::next_permutation(dst.begin(), dst.end()));
    return best;
}

}  // namespace

TEST(MinCostTransport, TrivialCases) {
    EXPECT_EQ(min_cost_transport({3}, {3}, {{2}}), 6);
    EXPECT_EQ(min_cost_transport({1, 1}, {1, 1}, {{0, 5}, {5, 0}}), 0);
    EXPECT_EQ(min_cost_transport({1, 1}, {1, 1}, {{5, 0}, {0, 5}}), 0);
    EXPECT_EQ(min_cost_transport({2, 0}, {1, 1}, {{1, 3}, {kNoPath, kNoPath}}), 4);
    EXPECT_THROW(min_cost_transport({1}, {2}, {{1}}), ArgumentError);
    EXPECT_THROW(min_cost_transport({1, 1}, {2}, {{1}}), ArgumentError);
    EXPECT_THROW(min_cost_transport({-1, 2}, {1}, {{1}, {1}}), ArgumentError);
}

TEST(MinCostTransport, UnreachableMass) {
    EXPECT_THROW(min_cost_transport({1, 1}, {1, 1}, {{1, 1}, {kNoPath, kNoPath}}), UnreachableError);
    // feasible only through the single finite pair of each row
    EXPECT_EQ(min_cost_transport({1, 1}, {1, 1}, {{kNoPath, 2}, {3, kNoPath}}), 5);
    EXPECT_THROW(min_cost_transport({2, 1}, {1, 2}, {{4, kNoPath}, {1, 1}}), UnreachableError);
}

TEST(MinCostTransport, MatchesAssignmentOracle) {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> atoms(1, 3), unit(0, 3), price(0, 6), hole(0, 9);
    for (int t = 0; t < 200; ++t) {
        std::vector<std::int64_t> supply(atoms(rng)), demand(atoms(rng));
        for (auto& s : supply) s = unit(rng);
        for (auto& d : demand) d = unit(rng);
        std::int64_t ts = std::accumulate(supply.begin(), supply.end(), std::int64_t{0});
        std::int64_t td = std::accumulate(demand.begin(), demand.end(), std::int64_t{0});
        // balance, keeping the total at most 7
        while (ts > 7) --supply[std::distance(supply.begin(), std::max_element(supply.begin(), supply.end()))], --ts;
        while (td > ts) --demand[std::distance(demand.begin(), std::max_element(demand.begin(), demand.end()))], --td;
        while (td < ts) ++demand[t % demand.size()], ++td;
        std::vector<std::vector<std::int64_t>> cost(supply.size(), std::vector<std::int64_t>(demand.size()));
        for (auto& row : cost)
            for (auto& c : row) c = hole(rng) == 0 ? kNoPath : price(rng);
        const auto want = assignment_oracle(supply, demand, cost);
        if (want) {
            EXPECT_EQ(min_cost_transport(supply, demand, cost), *want) << "trial " << t;
        } else {
            EXPECT_THROW(min_cost_transport(supply, demand, cost), UnreachableError) << "trial " << t;
        }
    }
}

TEST(W1, ProbabilityMasses) {
    TransportProblem p{{0.5, 0.5}, {0.25, 0.75}, {{1, 2}, {3, 1}}};
    // 0.25 at cost 1 from atom 0, 0.25 at 2 from atom 0, 0.5 at 1 from atom 1
    EXPECT_NEAR(w1(p), 0.25 + 0.5 + 0.5, 1e-12);
    EXPECT_THROW(w1(TransportProblem{{0.5}, {1.0}, {{1}}}), ArgumentError);
    EXPECT_THROW(w1(TransportProblem{{1.0}, {1.0}, {{kNoPath}}}), UnreachableError);
}

TEST(W1, MetricProperties) {
    // W1 over a shortest-path metric on points of a line: symmetric, triangle inequality
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    const std::size_t n = 5;
    std::vector<std::vector<std::int64_t>> d(n, std::vector<std::int64_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i][j] = std::abs(std::int64_t(i) - std::int64_t(j));
    auto draw = [&] {
        std::vector<double> m(n);
        for (auto& x : m) x = u(rng);
        const double s = std::accumulate(m.begin(), m.end(), 0.0);
        for (auto& x : m) x /= s;
        return m;
    };
    for (int t = 0; t < 50; ++t) {
        const auto a = draw(), b = draw(), c = draw();
        const double ab = w1({a, b, d}), ba = w1({b, a, d}), bc = w1({b, c, d}), ac = w1({a, c, d});
        EXPECT_NEAR(ab, ba, 1e-9);
        EXPECT_LE(ac, ab + bc + 1e-9);
        EXPECT_NEAR(w1({a, a, d}), 0.0, 1e-9);
        // on a line W1 is the L1 distance between CDFs
        double ca = 0, cb = 0, l1 = 0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            ca += a[i];
            cb += b[i];
            l1 += std::abs(ca - cb);
        }
        EXPECT_NEAR(ab, l1, 1e-9);
    }
}
