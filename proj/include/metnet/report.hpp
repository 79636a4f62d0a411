#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace metnet {

inline constexpr std::string_view kVersion = "0.1.0";

/// Shortest decimal form that round-trips; locale independent. Integers print without a fraction.
std::string format_number(double v);
/// Empty string for a missing value.
std::string format_number(const std::optional<double>& v);

/// CSV with RFC 4180 quoting and "\n" line endings.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void add(std::vector<std::string> row);
    std::size_t rows() const noexcept { return rows_.size(); }
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::string csv_field(std::string_view s);

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view bytes);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 1469598103934665603ull);

}  // namespace metnet
