#include "metnet/roles.hpp"

#include <algorithm>
#include <numeric>

namespace metnet {

Fraction jaccard_distance(std::span<const VertexId> a, std::span<const VertexId> b) {
    std::size_t common = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) ++i;
        else if (*j < *i) ++j;
        else {
            ++common;
            ++i;
            ++j;
        }
    }
    const auto uni = static_cast<std::int64_t>(a.size() + b.size() - common);
    if (uni == 0) return {0, 1};
    const auto sym = static_cast<std::int64_t>(a.size() + b.size() - 2 * common);
    const std::int64_t g = std::gcd(sym, uni);
    return {sym / g, uni / g};
}

RoleDistanceMatrix role_distance(const DirectedGraph& g) {
    const std::size_t n = g.vertex_count();
    RoleDistanceMatrix d(n);
    for (VertexId v = 0; v < n; ++v) {
        if (g.in_degree(v) == 0) d.empty_in.push_back(v);
        if (g.out_degree(v) == 0) d.empty_out.push_back(v);
    }
    for (VertexId a = 0; a < n; ++a) {
        for (VertexId b = a + 1; b < n; ++b) {
            const Fraction in = jaccard_distance(g.in_neighbors(a), g.in_neighbors(b));
            const Fraction out = jaccard_distance(g.out_neighbors(a), g.out_neighbors(b));
            std::int64_t num = in.num * out.den + out.num * in.den;
            std::int64_t den = in.den * out.den;
            const std::int64_t k = std::gcd(num, den);
            num /= k;
            den /= k;
            d.set(a, b, static_cast<double>(num) / static_cast<double>(den));
        }
    }
    return d;
}

}  // namespace metnet
