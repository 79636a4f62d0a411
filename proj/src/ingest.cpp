#include "metnet/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "metnet/error.hpp"

namespace metnet {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    bool pending_space = false;
    for (char c : trim(s)) {
        if (is_space(c)) {
            pending_space = true;
            continue;
        }
        if (pending_space) out.push_back(' ');
        pending_space = false;
        out.push_back(c);
    }
    return out;
}

void strip_bom(std::string& line) {
    if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF &&
        static_cast<unsigned char>(line[1]) == 0xBB && static_cast<unsigned char>(line[2]) == 0xBF)
        line.erase(0, 3);
}

std::optional<int> parse_year(std::string_view field, std::size_t line_no, const char* column) {
    field = trim(field);
    if (field.empty()) return std::nullopt;
    int value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw InputError(std::string("invalid ") + column + " '" + std::string(field) + "'", line_no);
    return value;
}

bool needs_quoting(std::string_view s) {
    return s.find_first_of(",\"\n\r") != std::string_view::npos;
}

void write_field(std::ostream& out, std::string_view s) {
    if (!needs_quoting(s)) {
        out << s;
        return;
    }
    out << '"';
    for (char c : s) {
        if (c == '"') out << '"';
        out << c;
    }
    out << '"';
}

}  // namespace

std::string normalize_category_name(std::string_view name) {
    std::string out = collapse_whitespace(name);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

CategoryId CategoryTable::intern(std::string_view name) {
    std::string key = normalize_category_name(name);
    if (key.empty()) throw InputError("empty category name");
    auto it = index_.find(key);
    if (it != index_.end()) return CategoryId{it->second};
    auto id = static_cast<std::uint32_t>(names_.size());
    names_.push_back(collapse_whitespace(name));
    index_.emplace(std::move(key), id);
    return CategoryId{id};
}

std::optional<CategoryId> CategoryTable::find(std::string_view name) const {
    auto it = index_.find(normalize_category_name(name));
    if (it == index_.end()) return std::nullopt;
    return CategoryId{it->second};
}

std::vector<std::string> split_delimited(std::string_view line, char delimiter) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    bool field_was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"' && trim(current).empty() && !field_was_quoted) {
            current.clear();
            quoted = true;
            field_was_quoted = true;
        } else if (c == delimiter) {
            fields.push_back(std::move(current));
            current.clear();
            field_was_quoted = false;
        } else {
            current.push_back(c);
        }
    }
    if (quoted) throw InputError("unterminated quoted field");
    fields.push_back(std::move(current));
    return fields;
}

Corpus parse_corpus(std::istream& in, CorpusFormat format, SelfLoopPolicy self_loops) {
    const char delimiter = format == CorpusFormat::Csv ? ',' : '\t';
    Corpus corpus;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::set<std::tuple<std::string, std::uint32_t, std::uint32_t, std::optional<int>, std::optional<int>>> seen;

    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1) strip_bom(line);
        if (trim(line).empty()) continue;

        std::vector<std::string> fields;
        try {
            fields = split_delimited(line, delimiter);
        } catch (const InputError& e) {
            throw InputError(e.what(), line_no);
        }

        if (!header_seen) {
            static const char* expected[] = {"word", "source", "target", "first_year", "last_year"};
            bool ok = fields.size() == 5;
            for (std::size_t i = 0; ok && i < 5; ++i)
                ok = normalize_category_name(fields[i]) == expected[i];
            if (!ok) throw InputError("expected header 'word,source,target,first_year,last_year'", line_no);
            header_seen = true;
            continue;
        }

        if (fields.size() != 5)
            throw InputError("expected 5 fields, found " + std::to_string(fields.size()), line_no);
        std::string word = collapse_whitespace(fields[0]);
        if (word.empty()) throw InputError("empty word", line_no);
        if (trim(fields[1]).empty()) throw InputError("empty source category", line_no);
        if (trim(fields[2]).empty()) throw InputError("empty target category", line_no);
        auto first = parse_year(fields[3], line_no, "first_year");
        auto last = parse_year(fields[4], line_no, "last_year");
        if (first && last && *first > *last)
            throw InputError("first_year " + std::to_string(*first) + " after last_year " + std::to_string(*last),
                             line_no);

        if (normalize_category_name(fields[1]) == normalize_category_name(fields[2])) {
            if (self_loops == SelfLoopPolicy::Reject)
                throw InputError("self-loop mapping '" + collapse_whitespace(fields[1]) + "' -> itself", line_no);
            ++corpus.skipped_self_loops;
            continue;
        }

        MetaphorRecord rec{std::move(word), corpus.categories.intern(fields[1]), corpus.categories.intern(fields[2]),
                           first, last};
        if (!seen.emplace(rec.word, rec.source.value, rec.target.value, rec.first_year, rec.last_year).second)
            ++corpus.duplicate_rows;
        corpus.records.push_back(std::move(rec));
    }
    if (!header_seen) throw InputError("empty corpus: missing header");
    return corpus;
}

void write_corpus(std::ostream& out, const std::vector<MetaphorRecord>& records, const CategoryTable& categories) {
    out << "word,source,target,first_year,last_year\n";
    for (const auto& r : records) {
        write_field(out, r.word);
        out << ',';
        write_field(out, categories.name(r.source));
        out << ',';
        write_field(out, categories.name(r.target));
        out << ',';
        if (r.first_year) out << *r.first_year;
        out << ',';
        if (r.last_year) out << *r.last_year;
        out << '\n';
    }
}

CategorySizeTable parse_category_sizes(std::istream& in, CategoryTable& categories) {
    const std::size_t corpus_categories = categories.size();
    std::vector<std::optional<std::int64_t>> sizes(corpus_categories);
    std::string line;
    std::size_t line_no = 0;
    bool first_row = true;

    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1) strip_bom(line);
        if (trim(line).empty()) continue;
        auto fields = split_delimited(line, ',');
        if (fields.size() != 2) throw InputError("expected 'name,size'", line_no);
        auto size_field = trim(fields[1]);
        if (first_row && normalize_category_name(fields[0]) == "name" && normalize_category_name(size_field) == "size") {
            first_row = false;
            continue;
        }
        first_row = false;

        std::int64_t size = 0;
        auto [ptr, ec] = std::from_chars(size_field.data(), size_field.data() + size_field.size(), size);
        if (ec != std::errc{} || ptr != size_field.data() + size_field.size())
            throw InputError("invalid size '" + std::string(size_field) + "'", line_no);
        if (size <= 0) throw InputError("category size must be positive, got " + std::to_string(size), line_no);

        CategoryId id = categories.intern(fields[0]);
        if (id.value >= sizes.size()) sizes.resize(id.value + 1);
        sizes[id.value] = size;
    }

    std::string missing;
    for (std::size_t i = 0; i < corpus_categories; ++i) {
        if (sizes[i]) continue;
        if (!missing.empty()) missing += ", ";
        missing += categories.name(CategoryId{static_cast<std::uint32_t>(i)});
    }
    if (!missing.empty()) throw InputError("categories missing from size table: " + missing);

    CategorySizeTable table;
    table.sizes.reserve(sizes.size());
    for (auto& s : sizes) table.sizes.push_back(*s);
    return table;
}

CategorySizeTable derive_category_sizes(const std::vector<MetaphorRecord>& records, const CategoryTable& categories) {
    std::vector<std::set<std::string_view>> words(categories.size());
    for (const auto& r : records) {
        words.at(r.source.value).insert(r.word);
        words.at(r.target.value).insert(r.word);
    }
    CategorySizeTable table;
    table.derived = true;
    table.sizes.reserve(words.size());
    for (const auto& w : words) table.sizes.push_back(std::max<std::int64_t>(1, static_cast<std::int64_t>(w.size())));
    return table;
}

const std::vector<double>* EmbeddingTable::find(std::string_view key) const {
    auto it = vectors.find(key);
    return it == vectors.end() ? nullptr : &it->second;
}

EmbeddingTable parse_embeddings(std::istream& in, std::size_t expected_dim) {
    EmbeddingTable table;
    table.dim = expected_dim;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1) strip_bom(line);
        std::istringstream tokens(line);
        std::string key;
        if (!(tokens >> key)) continue;

        std::vector<std::string> rest;
        for (std::string t; tokens >> t;) rest.push_back(std::move(t));

        if (line_no == 1 && rest.size() == 1) {
            // fastText header: "<count> <dim>"
            std::size_t count = 0, dim = 0;
            auto [p1, e1] = std::from_chars(key.data(), key.data() + key.size(), count);
            auto [p2, e2] = std::from_chars(rest[0].data(), rest[0].data() + rest[0].size(), dim);
            if (e1 == std::errc{} && e2 == std::errc{} && p1 == key.data() + key.size() &&
                p2 == rest[0].data() + rest[0].size() && (expected_dim == 0 || dim == expected_dim) && dim != 1) {
                table.dim = dim;
                continue;
            }
        }

        if (table.dim == 0) table.dim = rest.size();
        if (rest.size() != table.dim)
            throw InputError("expected " + std::to_string(table.dim) + " components, found " +
                                 std::to_string(rest.size()),
                             line_no);
        std::vector<double> v(table.dim);
        double norm2 = 0.0;
        for (std::size_t i = 0; i < rest.size(); ++i) {
            const std::string& t = rest[i];
            auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v[i]);
            if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v[i]))
                throw InputError("invalid vector component '" + t + "'", line_no);
            norm2 += v[i] * v[i];
        }
        if (norm2 == 0.0) throw InputError("zero vector for key '" + key + "'", line_no);
        auto [it, inserted] = table.vectors.insert_or_assign(std::move(key), std::move(v));
        if (!inserted) ++table.duplicate_keys;
    }
    if (table.vectors.empty()) throw InputError("embedding file contains no vectors");
    return table;
}

}  // namespace metnet
