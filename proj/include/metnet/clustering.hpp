#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "metnet/roles.hpp"

namespace metnet {

/// Lance-Williams update with Ward coefficients: distance from C_i u C_j to C_k.
double lance_williams_ward(double d_ik, double d_jk, double d_ij, std::size_t n_i, std::size_t n_j, std::size_t n_k);

/// One agglomeration step. Ids follow the usual linkage convention: leaves are
/// 0..n-1, the cluster created by merges[k] has id n+k. `left` holds the
/// child with the smaller leaf.
struct Merge {
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    double height = 0.0;
    std::uint32_t size = 0;
};

struct Dendrogram {
    std::size_t leaves = 0;
    std::vector<Merge> merges;  ///< n-1 merges, children before parents

    /// Leaf members of cluster `id`, ascending.
    std::vector<std::uint32_t> members(std::uint32_t id) const;
    /// Structure-only canonical form, e.g. "((0,1),2)".
    std::string canonical() const;
    /// Newick with branch length = parent height - child height.
    std::string newick(const std::vector<std::string>& names) const;
};

struct WardOptions {
    std::size_t cap = 10000;
    /// Two distances tie when they differ by at most this fraction of the current minimum.
    double tie_epsilon = 1e-12;
};

struct DendrogramSet {
    std::size_t leaves = 0;
    std::vector<Dendrogram> dendrograms;  ///< distinct structures, sorted by canonical form
    bool truncated = false;               ///< enumeration stopped at the cap
    std::size_t cap = 0;
};

/// Ward agglomeration that follows every tie in proximity: whenever several
/// cluster pairs sit at the minimum distance, each choice is explored. Returns
/// every distinct resulting dendrogram, up to `cap`.
DendrogramSet ward_hca_all(const RoleDistanceMatrix& dist, const WardOptions& options = {});

struct ClusterStability {
    std::vector<std::uint32_t> members;
    double subtree_fraction = 0.0;  ///< share of dendrograms containing this exact subtree
    double leafset_fraction = 0.0;  ///< share of dendrograms containing a cluster with these leaves
    std::string subtree;            ///< canonical structure, leaves by id
};

/// One row per distinct internal cluster (subtree) over all dendrograms, sorted by
/// size, then descending subtree and leaf-set fractions, then members.
std::vector<ClusterStability> cluster_stability(const DendrogramSet& set);

}  // namespace metnet
