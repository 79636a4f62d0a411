#include "metnet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "metnet/error.hpp"
#include "metnet/rng.hpp"

namespace metnet {

double mean(std::span<const double> x) {
    if (x.empty()) return 0.0;
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) return std::nullopt;
    const double mx = mean(x), my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> average_ranks(std::span<const double> x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(x.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
        i = j + 1;
    }
    return ranks;
}

std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) return std::nullopt;
    auto rx = average_ranks(x);
    auto ry = average_ranks(y);
    return pearson(rx, ry);
}

std::optional<double> correlation(std::span<const double> x, std::span<const double> y, CorrelationKind kind) {
    return kind == CorrelationKind::Pearson ? pearson(x, y) : spearman(x, y);
}

std::vector<int> equal_frequency_bins(std::span<const double> x, int bins) {
    if (bins < 1) throw ArgumentError("bin count must be positive");
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<int> labels(x.size());
    const auto n = static_cast<std::uint64_t>(x.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        labels[order[i]] = static_cast<int>(static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(bins) / n);
    return labels;
}

double mutual_information(std::span<const int> u, std::span<const int> v) {
    if (u.size() != v.size()) throw ArgumentError("labelings differ in length");
    if (u.empty()) return 0.0;
    std::map<int, double> cu, cv;
    std::map<std::pair<int, int>, double> joint;
    for (std::size_t i = 0; i < u.size(); ++i) {
        cu[u[i]] += 1.0;
        cv[v[i]] += 1.0;
        joint[{u[i], v[i]}] += 1.0;
    }
    const auto n = static_cast<double>(u.size());
    double mi = 0.0;
    for (const auto& [cell, c] : joint) mi += c / n * std::log(c * n / (cu[cell.first] * cv[cell.second]));
    return std::max(0.0, mi);
}

double dip_statistic(std::vector<double> x) {
    std::sort(x.begin(), x.end());
    const int n = static_cast<int>(x.size());
    if (n == 0) return 0.0;
    // 1-based views; the whole computation works on the 2n * dip scale.
    auto X = [&](int i) -> long double { return x[static_cast<std::size_t>(i - 1)]; };
    long double dip = 1.0;
    if (n < 2 || x.front() == x.back()) return static_cast<double>(dip / (2.0L * n));

    std::vector<int> mn(n + 1), mj(n + 1), gcm(n + 2), lcm(n + 2);
    mn[1] = 1;
    for (int j = 2; j <= n; ++j) {
        mn[j] = j - 1;
        for (;;) {
            const int a = mn[j], b = mn[a];
            if (a == 1 || (X(j) - X(a)) * (a - b) < (X(a) - X(b)) * (j - a)) break;
            mn[j] = b;
        }
    }
    mj[n] = n;
    for (int k = n - 1; k >= 1; --k) {
        mj[k] = k + 1;
        for (;;) {
            const int a = mj[k], b = mj[a];
            if (a == n || (X(k) - X(a)) * (a - b) < (X(a) - X(b)) * (k - a)) break;
            mj[k] = b;
        }
    }

    int low = 1, high = n;
    for (;;) {
        int i = 1;
        gcm[1] = high;
        while (gcm[i] > low) {
            gcm[i + 1] = mn[gcm[i]];
            ++i;
        }
        int ig = i;
        const int l_gcm = i;
        int ix = ig - 1;

        i = 1;
        lcm[1] = low;
        while (lcm[i] < high) {
            lcm[i + 1] = mj[lcm[i]];
            ++i;
        }
        int ih = i;
        const int l_lcm = i;
        int iv = 2;

        long double d = 0.0;
        if (l_gcm != 2 || l_lcm != 2) {
            do {
                const int gx = gcm[ix], lv = lcm[iv];
                long double dx;
                if (gx > lv) {
                    const int g1 = gcm[ix + 1];
                    dx = (lv - g1 + 1) - (X(lv) - X(g1)) * (gx - g1) / (X(gx) - X(g1));
                    ++iv;
                    if (dx >= d) {
                        d = dx;
                        ig = ix + 1;
                        ih = iv - 1;
                    }
                } else {
                    const int l1 = lcm[iv - 1];
                    dx = (X(gx) - X(l1)) * (lv - l1) / (X(lv) - X(l1)) - (gx - l1 - 1);
                    --ix;
                    if (dx >= d) {
                        d = dx;
                        ig = ix + 1;
                        ih = iv;
                    }
                }
                if (ix < 1) ix = 1;
                if (iv > l_lcm) iv = l_lcm;
            } while (gcm[ix] != lcm[iv]);
        } else {
            d = 1.0;
        }
        if (d < dip) break;

        long double dip_l = 0.0;
        for (int j = ig; j < l_gcm; ++j) {
            long double max_t = 1.0;
            const int jb = gcm[j + 1], je = gcm[j];
            if (je - jb > 1 && X(je) != X(jb)) {
                const long double c = (je - jb) / (X(je) - X(jb));
                for (int jj = jb; jj <= je; ++jj) max_t = std::max(max_t, (jj - jb + 1) - (X(jj) - X(jb)) * c);
            }
            dip_l = std::max(dip_l, max_t);
        }
        long double dip_u = 0.0;
        for (int j = ih; j < l_lcm; ++j) {
            long double max_t = 1.0;
            const int jb = lcm[j], je = lcm[j + 1];
            if (je - jb > 1 && X(je) != X(jb)) {
                const long double c = (je - jb) / (X(je) - X(jb));
                for (int jj = jb; jj <= je; ++jj) max_t = std::max(max_t, (X(jj) - X(jb)) * c - (jj - jb - 1));
            }
            dip_u = std::max(dip_u, max_t);
        }
        dip = std::max({dip, dip_l, dip_u});

        if (low == gcm[ig] && high == lcm[ih]) break;
        low = gcm[ig];
        high = lcm[ih];
    }
    return static_cast<double>(dip / (2.0L * n));
}

DipTestResult dip_test(std::span<const double> x, int simulations, std::uint64_t seed) {
    if (simulations < 1) throw ArgumentError("dip test needs at least one simulation");
    DipTestResult result;
    result.dip = dip_statistic(std::vector<double>(x.begin(), x.end()));
    result.simulations = simulations;
    int at_least = 0;
    std::vector<double> sample(x.size());
    for (int s = 0; s < simulations; ++s) {
        Rng rng(replicate_seed(seed, static_cast<std::uint64_t>(s)));
        for (auto& v : sample) v = uniform_unit(rng);
        if (dip_statistic(sample) >= result.dip) ++at_least;
    }
    result.p_value = (1.0 + at_least) / (1.0 + simulations);
    return result;
}

}  // namespace metnet
