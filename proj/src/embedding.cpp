#include "metnet/embedding.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "metnet/error.hpp"

namespace metnet {
namespace {

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

// Splits on ASCII non-alphanumerics; bytes >= 0x80 stay inside tokens so UTF-8 survives.
std::vector<std::string> tokens_of(std::string_view name) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : name) {
        const auto u = static_cast<unsigned char>(c);
        if (u >= 0x80 || std::isalnum(u)) {
            cur += c;
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

}  // namespace

std::string_view to_string(VectorSource s) {
    switch (s) {
        case VectorSource::Exact: return "exact";
        case VectorSource::Lowercase: return "lowercase";
        case VectorSource::TokenMean: return "token_mean";
    }
    return "unknown";
}

const std::vector<std::string>& default_stop_words() {
    static const std::vector<std::string> words = {"a",  "an", "and", "at", "by",  "for", "in",
                                                   "of", "on", "or",  "the", "to", "with"};
    return words;
}

std::optional<ResolvedVector> category_vector(std::string_view name, const EmbeddingTable& table) {
    if (const auto* v = table.find(name)) return ResolvedVector{*v, VectorSource::Exact, {}};
    const std::string lower = ascii_lower(name);
    if (const auto* v = table.find(lower)) return ResolvedVector{*v, VectorSource::Lowercase, {}};

    const auto& stop = default_stop_words();
    ResolvedVector out;
    out.source = VectorSource::TokenMean;
    out.values.assign(table.dim, 0.0);
    for (const auto& tok : tokens_of(name)) {
        const std::string low = ascii_lower(tok);
        if (std::find(stop.begin(), stop.end(), low) != stop.end()) continue;
        const std::vector<double>* v = table.find(tok);
        std::string key = tok;
        if (!v) {
            v = table.find(low);
            key = low;
        }
        if (!v) continue;
        for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] += (*v)[k];
        out.tokens.push_back(std::move(key));
    }
    if (out.tokens.empty()) return std::nullopt;
    for (double& x : out.values) x /= static_cast<double>(out.tokens.size());
    // opposite token vectors can cancel; such a mean has no direction
    if (std::all_of(out.values.begin(), out.values.end(), [](double x) { return x == 0.0; })) return std::nullopt;
    return out;
}

double euclidean_distance(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ArgumentError("vectors differ in dimension");
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += (x[k] - y[k]) * (x[k] - y[k]);
    return std::sqrt(s);
}

double cosine_dissimilarity(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ArgumentError("vectors differ in dimension");
    double dot = 0.0, nx = 0.0, ny = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        dot += x[k] * y[k];
        nx += x[k] * x[k];
        ny += y[k] * y[k];
    }
    if (nx == 0.0 || ny == 0.0) throw ArgumentError("cosine dissimilarity of a zero vector");
    const double c = std::clamp(dot / (std::sqrt(nx) * std::sqrt(ny)), -1.0, 1.0);
    return 1.0 - c;
}

PairedDistanceSample paired_distances(const RoleDistanceMatrix& roles, const CategoryTable& categories,
                                      const EmbeddingTable& table) {
    if (roles.size() != categories.size()) throw ArgumentError("role matrix and category table differ in size");
    PairedDistanceSample sample;
    std::vector<std::optional<std::vector<double>>> vec(categories.size());
    for (std::uint32_t c = 0; c < categories.size(); ++c) {
        const CategoryId id{c};
        if (auto r = category_vector(categories.name(id), table)) {
            sample.resolved.emplace_back(id, r->source);
            vec[c] = std::move(r->values);
        } else {
            sample.excluded.push_back(id);
        }
    }
    for (std::uint32_t a = 0; a < categories.size(); ++a) {
        if (!vec[a]) continue;
        for (std::uint32_t b = a + 1; b < categories.size(); ++b) {
            if (!vec[b]) continue;
            sample.rows.push_back({CategoryId{a}, CategoryId{b}, roles(a, b), euclidean_distance(*vec[a], *vec[b]),
                                   cosine_dissimilarity(*vec[a], *vec[b])});
        }
    }
    return sample;
}

EmbeddingComparison compare(const PairedDistanceSample& sample, int bins, CorrelationKind kind) {
    if (sample.rows.size() < 2) throw ArgumentError("embedding comparison needs at least 2 category pairs");
    if (bins < 2) throw ArgumentError("mutual information needs at least 2 bins");
    std::vector<double> role, euc, cos;
    for (const auto& r : sample.rows) {
        role.push_back(r.role);
        euc.push_back(r.euclidean);
        cos.push_back(r.cosine);
    }
    EmbeddingComparison out;
    out.n_pairs = sample.rows.size();
    out.excluded = sample.excluded.size();
    out.bins = bins;
    out.kind = kind;
    out.corr_cos = correlation(role, cos, kind);
    out.corr_euc = correlation(role, euc, kind);
    const auto lr = equal_frequency_bins(role, bins);
    out.mi_cos = mutual_information(lr, equal_frequency_bins(cos, bins));
    out.mi_euc = mutual_information(lr, equal_frequency_bins(euc, bins));
    return out;
}

}  // namespace metnet
