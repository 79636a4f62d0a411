#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "metnet/error.hpp"
#include "metnet/graph.hpp"
#include "metnet/rng.hpp"

namespace metnet {

/// Uniform directed graph on n vertices with exactly N distinct non-loop arcs.
/// Throws ArgumentError unless 0 <= N <= n(n-1).
DirectedGraph sample_er(std::size_t n, std::size_t arc_count, std::uint64_t seed);

struct SwapConfig {
    std::uint64_t attempts = 0;  ///< k: attempted swaps; rejected attempts count
    bool simple = true;          ///< reject swaps that would create a parallel edge
    std::uint64_t seed = 0;
};

/// Default number of attempted swaps: 10 per edge.
constexpr std::uint64_t default_swap_attempts(std::int64_t edge_count) {
    return 10u * static_cast<std::uint64_t>(edge_count < 0 ? 0 : edge_count);
}

struct SwapStats {
    std::uint64_t attempted = 0;
    std::uint64_t accepted = 0;
};

/// Degree-preserving edge swap chain: (a,b),(c,d) -> (a,d),(c,b). Swaps that
/// would create a loop are always rejected; with cfg.simple, swaps that would
/// duplicate an existing arc are rejected too. With cfg.simple the input must
/// not contain parallel edges (ArgumentError otherwise).
DirectedMultigraph swap_randomize(const DirectedMultigraph& g, const SwapConfig& cfg, SwapStats* stats = nullptr);
DirectedGraph swap_randomize(const DirectedGraph& g, const SwapConfig& cfg, SwapStats* stats = nullptr);

enum class NullModel { ErdosRenyi, ConfigSimple, ConfigMulti };

std::string to_string(NullModel model);
/// Accepts "er", "config-simple", "config-multi".
NullModel parse_null_model(const std::string& name);

/// Value of a metric on one graph: sparse map from domain key (histogram bin,
/// motif class code, ...) to value. Keys missing in a replicate count as 0.
using MetricValue = std::map<std::int64_t, double>;

struct Metric {
    std::string name;
    std::function<MetricValue(const DirectedMultigraph&)> evaluate;
};

struct EnsembleOptions {
    NullModel model = NullModel::ConfigSimple;
    int replicates = 1000;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> swaps;  ///< defaults to 10 * edges of the randomized graph
    bool sample_std = false;             ///< divide by R-1 instead of R
    unsigned threads = 1;                ///< 0 = hardware concurrency
};

struct EnsembleStats {
    std::string metric;
    NullModel model = NullModel::ConfigSimple;
    int replicates = 0;
    std::uint64_t seed = 0;
    std::uint64_t swaps = 0;
    bool sample_std = false;
    std::vector<std::int64_t> domain;  ///< sorted union of keys over replicates
    std::vector<double> mean;
    std::vector<double> std;
    std::vector<double> min;
    std::vector<double> max;

    /// Index of key in domain, if present.
    std::optional<std::size_t> find(std::int64_t key) const;
};

/// Draws one null-model graph for `template_graph`. ER uses the vertex count
/// and the number of connected pairs; ConfigSimple swaps the simple projection;
/// ConfigMulti swaps the multigraph itself.
DirectedMultigraph sample_null_model(const DirectedMultigraph& template_graph, NullModel model,
                                     std::uint64_t swaps, std::uint64_t seed);

/// Runs R replicates (replicate r uses replicate_seed(seed, r)) and evaluates
/// every metric on each. Replicates may run on several threads; aggregation is
/// in replicate order, so results do not depend on the thread count.
std::vector<EnsembleStats> run_ensemble(const DirectedMultigraph& template_graph, const std::vector<Metric>& metrics,
                                        const EnsembleOptions& options);
EnsembleStats run_ensemble(const DirectedMultigraph& template_graph, const Metric& metric,
                           const EnsembleOptions& options);

/// Raised when a metric throws; carries the replicate index.
class EnsembleError : public Error {
public:
    EnsembleError(int replicate, const std::string& what)
        : Error("replicate " + std::to_string(replicate) + ": " + what), replicate_(replicate) {}
    int replicate() const noexcept { return replicate_; }

private:
    int replicate_;
};

}  // namespace metnet
