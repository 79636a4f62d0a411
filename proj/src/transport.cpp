#include "metnet/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>
#include <type_traits>

namespace metnet {
namespace {

// Primal-dual min-cost flow: Dijkstra on reduced costs fixes the potentials,
// then a Dinic blocking flow saturates the zero-reduced-cost subgraph.
template <class Cap>
class MinCostFlow {
public:
    explicit MinCostFlow(std::size_t nodes, Cap eps) : adj_(nodes), eps_(eps) {}

    std::size_t add(std::size_t from, std::size_t to, Cap cap, std::int64_t cost) {
        adj_[from].push_back(edges_.size());
        edges_.push_back({to, cap, cost});
        adj_[to].push_back(edges_.size());
        edges_.push_back({from, Cap{0}, -cost});
        return edges_.size() - 2;
    }

    Cap flow_on(std::size_t e) const { return edges_[e ^ 1].cap; }

    Cap run(std::size_t s, std::size_t t) {
        const std::size_t n = adj_.size();
        std::vector<std::int64_t> pot(n, 0);
        Cap total{0};
        constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max();
        for (;;) {
            std::vector<std::int64_t> dist(n, inf);
            using Item = std::pair<std::int64_t, std::size_t>;
            std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
            dist[s] = 0;
            pq.push({0, s});
            while (!pq.empty()) {
                auto [d, u] = pq.top();
                pq.pop();
                if (d != dist[u]) continue;
                for (auto e : adj_[u]) {
                    const auto& ed = edges_[e];
                    if (ed.cap <= eps_) continue;
                    const std::int64_t nd = d + ed.cost + pot[u] - pot[ed.to];
                    if (nd < dist[ed.to]) {
                        dist[ed.to] = nd;
                        pq.push({nd, ed.to});
                    }
                }
            }
            if (dist[t] == inf) break;
            for (std::size_t v = 0; v < n; ++v) pot[v] += std::min(dist[v], dist[t]);

            const Cap pushed = blocking_flow(s, t, pot);
            if (pushed <= eps_) break;
            total += pushed;
        }
        return total;
    }

private:
    struct Edge {
        std::size_t to;
        Cap cap;
        std::int64_t cost;
    };

    bool admissible(std::size_t u, const Edge& e, const std::vector<std::int64_t>& pot) const {
        return e.cap > eps_ && e.cost + pot[u] - pot[e.to] == 0;
    }

    Cap blocking_flow(std::size_t s, std::size_t t, const std::vector<std::int64_t>& pot) {
        Cap total{0};
        const std::size_t n = adj_.size();
        for (;;) {
            std::vector<int> level(n, -1);
            std::queue<std::size_t> q;
            level[s] = 0;
            q.push(s);
            while (!q.empty()) {
                const auto u = q.front();
                q.pop();
                for (auto e : adj_[u]) {
                    const auto& ed = edges_[e];
                    if (level[ed.to] < 0 && admissible(u, ed, pot)) {
                        level[ed.to] = level[u] + 1;
                        q.push(ed.to);
                    }
                }
            }
            if (level[t] < 0) return total;
            std::vector<std::size_t> it(n, 0);
            for (;;) {
                const Cap f = push(s, t, std::numeric_limits<Cap>::max(), level, it, pot);
                if (f <= eps_) break;
                total += f;
            }
        }
    }

    Cap push(std::size_t u, std::size_t t, Cap limit, const std::vector<int>& level, std::vector<std::size_t>& it,
             const std::vector<std::int64_t>& pot) {
        if (u == t) return limit;
        for (; it[u] < adj_[u].size(); ++it[u]) {
            const auto e = adj_[u][it[u]];
            auto& ed = edges_[e];
            if (level[ed.to] != level[u] + 1 || !admissible(u, ed, pot)) continue;
            const Cap f = push(ed.to, t, std::min(limit, ed.cap), level, it, pot);
            if (f > eps_) {
                ed.cap -= f;
                edges_[e ^ 1].cap += f;
                return f;
            }
        }
        return Cap{0};
    }

    std::vector<std::vector<std::size_t>> adj_;
    std::vector<Edge> edges_;
    Cap eps_;
};

template <class Cap>
void check_shape(const std::vector<Cap>& supply, const std::vector<Cap>& demand,
                 const std::vector<std::vector<std::int64_t>>& cost) {
    if (cost.size() != supply.size()) throw ArgumentError("cost matrix needs one row per source atom");
    for (const auto& row : cost) {
        if (row.size() != demand.size()) throw ArgumentError("cost matrix needs one column per target atom");
        for (auto c : row)
            if (c < 0 && c != kNoPath) throw ArgumentError("transport costs must be non-negative");
    }
}

// Returns the total cost as a Cap-weighted sum; throws when not all supply moves.
template <class Cap>
Cap solve(const std::vector<Cap>& supply, const std::vector<Cap>& demand,
          const std::vector<std::vector<std::int64_t>>& cost, Cap eps, Cap slack) {
    const std::size_t m = supply.size();
    const std::size_t k = demand.size();
    const std::size_t s = m + k;
    const std::size_t t = s + 1;
    MinCostFlow<Cap> flow(m + k + 2, eps);
    const Cap total = std::accumulate(supply.begin(), supply.end(), Cap{0});
    for (std::size_t i = 0; i < m; ++i)
        if (supply[i] > Cap{0}) flow.add(s, i, supply[i], 0);
    for (std::size_t j = 0; j < k; ++j)
        if (demand[j] > Cap{0}) flow.add(m + j, t, demand[j], 0);
    std::vector<std::pair<std::size_t, std::int64_t>> arcs;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (cost[i][j] != kNoPath && supply[i] > Cap{0} && demand[j] > Cap{0})
                arcs.emplace_back(flow.add(i, m + j, total, cost[i][j]), cost[i][j]);
    const Cap moved = flow.run(s, t);
    if (total - moved > slack) throw UnreachableError();
    Cap result{0};
    for (auto [e, c] : arcs) result += flow.flow_on(e) * static_cast<Cap>(c);
    return result;
}

}  // namespace

std::int64_t min_cost_transport(const std::vector<std::int64_t>& supply, const std::vector<std::int64_t>& demand,
                                const std::vector<std::vector<std::int64_t>>& cost) {
    check_shape(supply, demand, cost);
    for (auto x : supply)
        if (x < 0) throw ArgumentError("supplies must be non-negative");
    for (auto x : demand)
        if (x < 0) throw ArgumentError("demands must be non-negative");
    if (std::accumulate(supply.begin(), supply.end(), std::int64_t{0}) !=
        std::accumulate(demand.begin(), demand.end(), std::int64_t{0}))
        throw ArgumentError("supply and demand totals differ");
    return solve<std::int64_t>(supply, demand, cost, 0, 0);
}

double w1(const TransportProblem& p) {
    check_shape(p.source_mass, p.target_mass, p.cost);
    auto check_side = [](const std::vector<double>& mass, const char* side) {
        double sum = 0.0;
        for (double x : mass) {
            if (!(x >= 0.0) || !std::isfinite(x)) throw ArgumentError(std::string(side) + " masses must be non-negative");
            sum += x;
        }
        if (std::abs(sum - 1.0) > 1e-12) throw ArgumentError(std::string(side) + " masses must sum to 1");
    };
    check_side(p.source_mass, "source");
    check_side(p.target_mass, "target");
    return solve<double>(p.source_mass, p.target_mass, p.cost, 1e-15, 1e-9);
}

}  // namespace metnet
