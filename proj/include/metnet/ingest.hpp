#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "metnet/error.hpp"

namespace metnet {

/// Dense handle of a thematic category. Values are 0..n-1 in first-appearance order.
struct CategoryId {
    std::uint32_t value = 0;

    friend auto operator<=>(const CategoryId&, const CategoryId&) = default;
};

/// Trims, collapses internal whitespace runs to one space and lower-cases ASCII letters.
std::string normalize_category_name(std::string_view name);

/// Interns category names to dense ids. Lookup uses the normalized form; the
/// display name is the first spelling seen (whitespace-normalized).
class CategoryTable {
public:
    CategoryId intern(std::string_view name);
    std::optional<CategoryId> find(std::string_view name) const;

    const std::string& name(CategoryId id) const { return names_.at(id.value); }
    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

struct MetaphorRecord {
    std::string word;
    CategoryId source;
    CategoryId target;
    std::optional<int> first_year;
    std::optional<int> last_year;

    friend bool operator==(const MetaphorRecord&, const MetaphorRecord&) = default;
};

enum class CorpusFormat { Csv, Tsv };

enum class SelfLoopPolicy {
    Reject,  ///< the whole parse fails on the first self-mapping row
    Skip,    ///< the row is dropped and counted
};

struct Corpus {
    std::vector<MetaphorRecord> records;
    CategoryTable categories;
    std::size_t skipped_self_loops = 0;
    std::size_t duplicate_rows = 0;
};

/// Parses the canonical corpus `word,source,target,first_year,last_year` (header required).
/// Empty year fields mean unknown / still current. Blank lines are ignored.
Corpus parse_corpus(std::istream& in, CorpusFormat format = CorpusFormat::Csv,
                    SelfLoopPolicy self_loops = SelfLoopPolicy::Reject);

/// Writes records back in the canonical CSV shape accepted by parse_corpus.
void write_corpus(std::ostream& out, const std::vector<MetaphorRecord>& records,
                  const CategoryTable& categories);

/// Lexical size (entry count) of each category, indexed by CategoryId.
struct CategorySizeTable {
    std::vector<std::int64_t> sizes;
    bool derived = false;  ///< true when sizes were computed from the corpus

    std::int64_t at(CategoryId id) const { return sizes.at(id.value); }
};

/// Reads `name,size` rows (optional header). Categories named in the table but
/// absent from the corpus are appended to `categories` as zero-degree vertices.
/// Throws when a size is not a positive integer or a corpus category is missing.
CategorySizeTable parse_category_sizes(std::istream& in, CategoryTable& categories);

/// Fallback sizes: number of distinct words attested in each category
/// (as source or target). Categories without records get size 1.
CategorySizeTable derive_category_sizes(const std::vector<MetaphorRecord>& records,
                                        const CategoryTable& categories);

struct EmbeddingTable {
    std::size_t dim = 0;
    std::map<std::string, std::vector<double>, std::less<>> vectors;
    std::size_t duplicate_keys = 0;

    const std::vector<double>* find(std::string_view key) const;
};

/// Reads `key v1 ... vD` lines. A leading `count dim` header line (fastText
/// `.vec`) is skipped. With expected_dim == 0 the dimension is taken from the
/// first vector line. Duplicate keys: last wins, counted.
EmbeddingTable parse_embeddings(std::istream& in, std::size_t expected_dim);

/// Splits one delimited line honouring RFC 4180 double-quoting.
std::vector<std::string> split_delimited(std::string_view line, char delimiter);

}  // namespace metnet
