#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "metnet/ingest.hpp"
#include "metnet/roles.hpp"
#include "metnet/stats.hpp"

namespace metnet {

enum class VectorSource { Exact, Lowercase, TokenMean };

std::string_view to_string(VectorSource s);

struct ResolvedVector {
    std::vector<double> values;
    VectorSource source = VectorSource::Exact;
    std::vector<std::string> tokens;  ///< keys that contributed, for TokenMean
};

/// Stop words dropped before the token fallback.
const std::vector<std::string>& default_stop_words();

/// Exact key, then ASCII-lowercased key, then the mean of the vectors of the
/// name's alphanumeric tokens (each tried exact, then lowercased; stop words
/// dropped). Empty when no token resolves.
std::optional<ResolvedVector> category_vector(std::string_view name, const EmbeddingTable& table);

double euclidean_distance(std::span<const double> x, std::span<const double> y);
/// 1 - cos(x, y), in [0, 2]. Both vectors must be non-zero.
double cosine_dissimilarity(std::span<const double> x, std::span<const double> y);

struct PairedDistanceRow {
    CategoryId a;
    CategoryId b;
    double role = 0.0;
    double euclidean = 0.0;
    double cosine = 0.0;
};

struct PairedDistanceSample {
    std::vector<PairedDistanceRow> rows;  ///< one per unordered pair, a < b
    std::vector<CategoryId> excluded;     ///< categories without a vector
    std::vector<std::pair<CategoryId, VectorSource>> resolved;
};

PairedDistanceSample paired_distances(const RoleDistanceMatrix& roles, const CategoryTable& categories,
                                      const EmbeddingTable& table);

struct EmbeddingComparison {
    std::size_t n_pairs = 0;
    std::size_t excluded = 0;
    int bins = 32;
    CorrelationKind kind = CorrelationKind::Pearson;
    std::optional<double> corr_cos;  ///< empty when a column has zero variance
    std::optional<double> corr_euc;
    double mi_cos = 0.0;
    double mi_euc = 0.0;
};

/// Throws ArgumentError when fewer than 2 rows or bins < 2.
EmbeddingComparison compare(const PairedDistanceSample& sample, int bins = 32,
                            CorrelationKind kind = CorrelationKind::Pearson);

}  // namespace metnet
