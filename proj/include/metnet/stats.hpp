#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace metnet {

double mean(std::span<const double> x);

/// Pearson correlation; nullopt when the sizes differ, n < 2, or a column has zero variance.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

/// Ranks with ties averaged, 1-based.
std::vector<double> average_ranks(std::span<const double> x);

/// Spearman rank correlation (Pearson on average ranks).
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

enum class CorrelationKind { Pearson, Spearman };

std::optional<double> correlation(std::span<const double> x, std::span<const double> y, CorrelationKind kind);

/// Equal-frequency discretization into `bins` cells. Values are ordered by
/// (value, index) and the i-th smallest goes to cell floor(i * bins / n), so
/// cell sizes differ by at most one and identical inputs give identical labels.
std::vector<int> equal_frequency_bins(std::span<const double> x, int bins);

/// Mutual information of two labelings (natural log). The sums run over the
/// cells of each partition.
double mutual_information(std::span<const int> u, std::span<const int> v);

/// Hartigan's dip statistic of the empirical distribution of x (scale of F, in [0, 1/4]).
double dip_statistic(std::vector<double> x);

struct DipTestResult {
    double dip = 0.0;
    double p_value = 1.0;
    int simulations = 0;
};

/// Dip test of unimodality with a Monte-Carlo p-value against uniform samples of the same size.
DipTestResult dip_test(std::span<const double> x, int simulations, std::uint64_t seed);

}  // namespace metnet
