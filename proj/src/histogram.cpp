#include "metnet/histogram.hpp"

#include <cmath>

#include "metnet/error.hpp"

namespace metnet {

std::int64_t BinSpec::bin_of(double x) const {
    return static_cast<std::int64_t>(std::floor((x - origin) / width));
}

std::int64_t Histogram::total() const {
    std::int64_t t = 0;
    for (const auto& [bin, c] : counts) t += c;
    return t;
}

Histogram make_histogram(std::span<const double> values, BinSpec bins) {
    if (!(bins.width > 0.0) || !std::isfinite(bins.width) || !std::isfinite(bins.origin))
        throw ArgumentError("bin width must be positive and finite");
    Histogram h{bins, {}};
    for (double x : values) {
        if (!std::isfinite(x)) throw ArgumentError("histogram value is not finite");
        ++h.counts[bins.bin_of(x)];
    }
    return h;
}

Histogram degree_histogram(std::span<const DegreeRecord> records, DegreeSide side, DegreeMode mode, BinSpec bins) {
    std::vector<double> values;
    values.reserve(records.size());
    for (const auto& r : records) {
        if (mode == DegreeMode::Count)
            values.push_back(static_cast<double>(side == DegreeSide::In ? r.in_degree : r.out_degree));
        else
            values.push_back(side == DegreeSide::In ? r.in_density : r.out_density);
    }
    return make_histogram(values, bins);
}

}  // namespace metnet
