#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "metnet/embedding.hpp"

using namespace metnet;

namespace {

EmbeddingTable table() {
    std::istringstream in("light 1 0 0\nHeat 0 1 0\nfood 1 1 0\neating 1 -1 2\nsky 0 0 3\n");
    return parse_embeddings(in, 3);
}

}  // namespace

TEST(CategoryVector, ResolutionOrder) {
    const auto t = table();
    auto v = category_vector("light", t);
    ASSERT_TRUE(v);
    EXPECT_EQ(v->source, VectorSource::Exact);
    v = category_vector("LIGHT", t);
    ASSERT_TRUE(v);
    EXPECT_EQ(v->source, VectorSource::Lowercase);
    v = category_vector("Heat", t);
    ASSERT_TRUE(v);
    EXPECT_EQ(v->source, VectorSource::Exact);
    v = category_vector("Food and Eating", t);
    ASSERT_TRUE(v);
    EXPECT_EQ(v->source, VectorSource::TokenMean);
    EXPECT_EQ(v->values, (std::vector<double>{1, 0, 1}));
    EXPECT_EQ(v->tokens, (std::vector<std::string>{"food", "eating"}));
    v = category_vector("the sky, above", t);
    ASSERT_TRUE(v);
    EXPECT_EQ(v->values, (std::vector<double>{0, 0, 3}));
    EXPECT_FALSE(category_vector("relative position", t));
    EXPECT_FALSE(category_vector("and of the", t));
    EXPECT_EQ(to_string(VectorSource::TokenMean), "token_mean");
}

TEST(CategoryVector, StopWords) {
    const auto& s = default_stop_words();
    EXPECT_NE(std::find(s.begin(), s.end(), "and"), s.end());
    EXPECT_NE(std::find(s.begin(), s.end(), "of"), s.end());
}

TEST(Distances, EuclideanAndCosine) {
    const std::vector<double> a{1, 0}, b{0, 2}, c{-3, 0}, z{0, 0};
    EXPECT_DOUBLE_EQ(euclidean_distance(a, b), std::sqrt(5.0));
    EXPECT_DOUBLE_EQ(cosine_dissimilarity(a, b), 1.0);
    EXPECT_DOUBLE_EQ(cosine_dissimilarity(a, c), 2.0);
    EXPECT_NEAR(cosine_dissimilarity(a, std::vector<double>{5, 0}), 0.0, 1e-15);
    EXPECT_THROW(cosine_dissimilarity(a, z), ArgumentError);
    EXPECT_THROW(euclidean_distance(a, std::vector<double>{1}), ArgumentError);
}

TEST(PairedDistances, ExcludesUnresolvedAndListsPairs) {
    CategoryTable cats;
    for (const char* n : {"light", "relative position", "Heat", "food and eating"}) cats.intern(n);
    RoleDistanceMatrix roles(4);
    roles.set(0, 2, 0.5);
    roles.set(0, 3, 1.25);
    roles.set(2, 3, 2.0);
    const auto s = paired_distances(roles, cats, table());
    ASSERT_EQ(s.excluded.size(), 1u);
    EXPECT_EQ(s.excluded[0].value, 1u);
    ASSERT_EQ(s.rows.size(), 3u);
    for (const auto& r : s.rows) {
        EXPECT_LT(r.a, r.b);
        EXPECT_EQ(r.role, roles(r.a.value, r.b.value));
    }
    EXPECT_DOUBLE_EQ(s.rows[0].euclidean, std::sqrt(2.0));
    EXPECT_DOUBLE_EQ(s.rows[0].cosine, 1.0);
    EXPECT_THROW(paired_distances(RoleDistanceMatrix(2), cats, table()), ArgumentError);
}

TEST(Compare, CorrelationAndMutualInformation) {
    PairedDistanceSample s;
    for (int i = 0; i < 64; ++i) {
        const double x = i * 0.03;
        // cosine tracks role monotonically, euclidean is a permutation of it
        s.rows.push_back({CategoryId{0}, CategoryId{1}, x, double((i * 37) % 64), 0.5 * x + 0.1});
    }
    const auto c = compare(s, 8);
    EXPECT_EQ(c.n_pairs, 64u);
    EXPECT_NEAR(*c.corr_cos, 1.0, 1e-12);
    EXPECT_NEAR(c.mi_cos, std::log(8.0), 1e-12);
    EXPECT_LT(c.mi_euc, c.mi_cos);
    EXPECT_THROW(compare(s, 1), ArgumentError);
    PairedDistanceSample one;
    one.rows.push_back({});
    EXPECT_THROW(compare(one), ArgumentError);
}

TEST(Compare, ToyEmbeddingsLoad) {
    std::ifstream in(std::string(METNET_DATA_DIR) + "/toy_embeddings.txt");
    ASSERT_TRUE(in);
    const auto t = parse_embeddings(in, 0);
    EXPECT_EQ(t.dim, 8u);
    EXPECT_FALSE(category_vector("relative position", t));
    EXPECT_TRUE(category_vector("food and eating", t));
}
