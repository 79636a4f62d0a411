#pragma once

#include <cstdint>
#include <vector>

#include "metnet/error.hpp"

namespace metnet {

/// Cost marker for a pair that cannot be connected.
inline constexpr std::int64_t kNoPath = -1;

/// Balanced transportation problem. cost[i][j] is the non-negative integer
/// price of moving one unit from source atom i to target atom j, or kNoPath.
struct TransportProblem {
    std::vector<double> source_mass;
    std::vector<double> target_mass;
    std::vector<std::vector<std::int64_t>> cost;
};

/// Raised when the mass cannot be routed over finite-cost pairs.
class UnreachableError : public Error {
public:
    UnreachableError() : Error("transport is infeasible over finite-cost pairs") {}
};

/// Wasserstein-1 optimum of a transportation problem with probability masses.
/// Masses must be non-negative and each side must sum to 1 within 1e-12.
double w1(const TransportProblem& problem);

/// Exact optimum with integer supplies and demands of equal total.
std::int64_t min_cost_transport(const std::vector<std::int64_t>& supply, const std::vector<std::int64_t>& demand,
                                const std::vector<std::vector<std::int64_t>>& cost);

}  // namespace metnet
