#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "metnet/graph.hpp"

namespace metnet {

/// Symmetric matrix of role distances in [0, 2] with zero diagonal.
class RoleDistanceMatrix {
public:
    RoleDistanceMatrix() = default;
    explicit RoleDistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, double v) {
        d_[i * n_ + j] = v;
        d_[j * n_ + i] = v;
    }

    /// Categories whose in- or out-neighborhood is empty; their 0/0 Jaccard terms are 0.
    std::vector<VertexId> empty_in;
    std::vector<VertexId> empty_out;

private:
    std::size_t n_ = 0;
    std::vector<double> d_;
};

/// Jaccard distance |A xor B| / |A u B| as a reduced fraction; 0/0 is 0/1.
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;
};
Fraction jaccard_distance(std::span<const VertexId> a, std::span<const VertexId> b);

/// d(c,c') = Jaccard(N_in(c), N_in(c')) + Jaccard(N_out(c), N_out(c')). The sum is
/// formed as one reduced fraction before conversion, so equal rationals give
/// identical doubles.
RoleDistanceMatrix role_distance(const DirectedGraph& g);

}  // namespace metnet
