#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "metnet/error.hpp"
#include "metnet/stats.hpp"

using namespace metnet;

TEST(Correlation, PearsonAndSpearman) {
    const std::vector<double> x{1, 2, 3, 4, 5}, y{2, 4, 6, 8, 10}, z{5, 4, 3, 2, 1}, c{3, 3, 3, 3, 3};
    EXPECT_NEAR(*pearson(x, y), 1.0, 1e-12);
    EXPECT_NEAR(*pearson(x, z), -1.0, 1e-12);
    EXPECT_FALSE(pearson(x, c));
    EXPECT_FALSE(pearson(std::vector<double>{1}, std::vector<double>{2}));
    EXPECT_FALSE(pearson(x, std::vector<double>{1, 2}));
    // monotone but non-linear
    const std::vector<double> cube{1, 8, 27, 64, 125};
    EXPECT_LT(*pearson(x, cube), 1.0);
    EXPECT_NEAR(*spearman(x, cube), 1.0, 1e-12);
    // hand value: x = (1,2,3), y = (1,3,2) -> r = 0.5
    EXPECT_NEAR(*pearson(std::vector<double>{1, 2, 3}, std::vector<double>{1, 3, 2}), 0.5, 1e-12);
    EXPECT_EQ(correlation(x, cube, CorrelationKind::Spearman), spearman(x, cube));
}

TEST(Ranks, TiesAveraged) {
    EXPECT_EQ(average_ranks(std::vector<double>{10, 20, 20, 30}), (std::vector<double>{1, 2.5, 2.5, 4}));
    EXPECT_EQ(average_ranks(std::vector<double>{3, 1, 2}), (std::vector<double>{3, 1, 2}));
    EXPECT_EQ(average_ranks(std::vector<double>{7, 7, 7}), (std::vector<double>{2, 2, 2}));
}

TEST(EqualFrequencyBins, BalancedAndStable) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> nd;
    for (int n : {1, 7, 32, 100, 513}) {
        std::vector<double> x(n);
        for (auto& v : x) v = std::round(nd(rng) * 3);  // plenty of ties
        for (int k : {2, 5, 32}) {
            const auto lab = equal_frequency_bins(x, k);
            std::vector<int> size(k, 0);
            for (int l : lab) ++size[l];
            const int lo = n / k, hi = (n + k - 1) / k;
            for (int s : size) {
                EXPECT_GE(s, lo);
                EXPECT_LE(s, hi);
            }
            // labels are monotone in value
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (x[i] < x[j]) {
                        EXPECT_LE(lab[i], lab[j]);
                    }
        }
    }
    EXPECT_THROW(equal_frequency_bins(std::vector<double>{1}, 0), ArgumentError);
}

TEST(MutualInformation, HandValues) {
    const std::vector<int> u{0, 0, 1, 1}, v{0, 1, 1, 1};
    const double want = 0.25 * std::log(2.0) + 0.25 * std::log(2.0 / 3) + 0.5 * std::log(4.0 / 3);
    EXPECT_NEAR(mutual_information(u, v), want, 1e-12);
    EXPECT_NEAR(mutual_information(u, v), mutual_information(v, u), 1e-12);
    EXPECT_THROW(mutual_information(u, std::vector<int>{1}), ArgumentError);
}

TEST(MutualInformation, IdenticalEqualFrequencyLabelsGiveLogK) {
    for (int k : {2, 4, 32}) {
        std::vector<double> x(k * 10);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(double(i));
        const auto lab = equal_frequency_bins(x, k);
        EXPECT_NEAR(mutual_information(lab, lab), std::log(double(k)), 1e-12);
    }
}

TEST(MutualInformation, ProductLabelingIsIndependent) {
    std::vector<int> u, v;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 5; ++j) {
            u.push_back(i);
            v.push_back(j);
        }
    EXPECT_NEAR(mutual_information(u, v), 0.0, 1e-12);
}

TEST(Dip, ReferenceValues) {
    // reference: the diptest Python package
    EXPECT_NEAR(dip_statistic({0.1, 0.15, 0.2, 0.22, 0.3, 0.31, 2.0, 2.1, 2.15, 2.2, 2.3, 2.35}),
                0.20710784313725486, 1e-12);
    EXPECT_NEAR(dip_statistic({1.0, 1.5, 1.7, 1.8, 1.9, 2.0, 2.0, 2.1, 2.2, 2.3, 2.5, 3.0}), 0.041666666666666775,
                1e-12);
    EXPECT_NEAR(dip_statistic({1, 1, 1, 2, 2, 3, 3, 3, 3, 4, 5, 5, 5, 5, 5, 6}), 0.125, 1e-12);
    EXPECT_NEAR(dip_statistic({0.0, 0.05, 0.5, 0.52, 0.55, 0.9, 0.91, 0.95, 1.4, 1.45, 3.0, 3.1, 3.2, 3.3, 3.35}),
                0.13596491228070173, 1e-12);
}

TEST(Dip, BoundsAndInvariance) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int t = 0; t < 50; ++t) {
        const int n = 4 + t * 3;
        std::vector<double> x(n);
        for (auto& v : x) v = u(rng);
        const double d = dip_statistic(x);
        EXPECT_GE(d, 1.0 / (2 * n) - 1e-12);
        EXPECT_LE(d, 0.25 + 1e-12);
        // affine maps and order do not change the dip
        std::vector<double> y = x;
        for (auto& v : y) v = 3 * v + 7;
        std::shuffle(y.begin(), y.end(), rng);
        EXPECT_NEAR(dip_statistic(y), d, 1e-9);
    }
}

TEST(DipTest, SeparatesBimodalFromUnimodal) {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> nd;
    std::vector<double> uni(300), bi(300);
    for (auto& v : uni) v = nd(rng);
    for (std::size_t i = 0; i < bi.size(); ++i) bi[i] = nd(rng) + (i % 2 ? 6.0 : 0.0);
    const auto pu = dip_test(uni, 200, 1);
    const auto pb = dip_test(bi, 200, 1);
    EXPECT_GT(pu.p_value, 0.1);
    EXPECT_LT(pb.p_value, 0.01);
    EXPECT_EQ(pb.simulations, 200);
    EXPECT_EQ(dip_test(uni, 50, 4).p_value, dip_test(uni, 50, 4).p_value);
    EXPECT_THROW(dip_test(uni, 0, 1), ArgumentError);
}
