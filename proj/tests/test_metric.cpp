#include <gtest/gtest.h>

#include <bit>

#include "kph/metric.hpp"

using namespace kph;

TEST(MetricSpace, ValidatesTwoPointSpace) {
    const MetricSpace m = MetricSpace::validate({{0, 1}, {1, 0}});
    EXPECT_TRUE(m.same_distances(unit_interval()));
    EXPECT_EQ(m.labels(), (std::vector<std::string>{"0", "1"}));
}

TEST(MetricSpace, AsymmetryReportsIndices) {
    try {
        MetricSpace::validate({{0, 1}, {2, 0}});
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.row(), 0U);
        EXPECT_EQ(e.col(), 1U);
        EXPECT_NE(std::string(e.what()).find("(0,1)"), std::string::npos);
    }
}

TEST(MetricSpace, RejectsNegativeAndNonFinite) {
    EXPECT_THROW(MetricSpace::validate({{0, -1}, {-1, 0}}), ValidationError);
    EXPECT_THROW(MetricSpace::validate({{0, kInfinity}, {kInfinity, 0}}), ValidationError);
    EXPECT_THROW(MetricSpace::validate({{0, 1}, {1}}), InputError);
}

TEST(MetricSpace, GeneralizedSpacesAccepted) {
    // Triangle inequality violated, nonzero diagonal: both allowed.
    EXPECT_NO_THROW(MetricSpace::validate({{0, 3, 5}, {3, 0, 9}, {5, 9, 0}}));
    EXPECT_NO_THROW(MetricSpace::validate({{2, 1}, {1, 0}}));
}

TEST(ProductSum, SquareOfIntervalIsHammingSquare) {
    const MetricSpace sq = product_sum(unit_interval(), unit_interval());
    EXPECT_EQ(sq.size(), 4U);
    EXPECT_TRUE(sq.same_distances(hamming_cube(2)));
    EXPECT_EQ(sq.labels()[2], "(1,0)");
}

TEST(ProductSum, OnePointIsIdentity) {
    const MetricSpace x = MetricSpace::validate({{0, 3, 5}, {3, 0, 9}, {5, 9, 0}});
    EXPECT_TRUE(product_sum(x, one_point()).same_distances(x));
    EXPECT_TRUE(product_sum(one_point(), x).same_distances(x));
}

TEST(ProductSum, IntervalTimesSquareIsCube) {
    const MetricSpace cube = product_sum(unit_interval(), hamming_cube(2));
    ASSERT_EQ(cube.size(), 8U);
    // All 64 ordered pairs against the Hamming distance of the bit strings.
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j)
            EXPECT_EQ(cube(i, j), static_cast<Time>(std::popcount(i ^ j)));
    EXPECT_EQ(diameter(cube), 3);
}

TEST(ProductSum, Associative) {
    const MetricSpace a = MetricSpace::validate({{0, 2}, {2, 1}});
    const MetricSpace b = MetricSpace::validate({{0, 3, 5}, {3, 0, 9}, {5, 9, 0}});
    const MetricSpace c = unit_interval();
    EXPECT_TRUE(product_sum(product_sum(a, b), c).same_distances(product_sum(a, product_sum(b, c))));
}

TEST(ProductSum, PointCap) {
    Limits tight;
    tight.max_points = 7;
    EXPECT_THROW(product_sum(unit_interval(), hamming_cube(2), tight), CapError);
}

TEST(HammingCube, IteratedProducts) {
    EXPECT_TRUE(hamming_cube(1).same_distances(unit_interval()));
    MetricSpace acc = unit_interval();
    for (int k = 2; k <= 5; ++k) {
        acc = product_sum(acc, unit_interval());
        EXPECT_TRUE(hamming_cube(k).same_distances(acc)) << "k=" << k;
    }
    EXPECT_EQ(hamming_cube(3).size(), 8U);
    EXPECT_EQ(hamming_cube(3).labels()[3], "011");
}

TEST(HammingCube, Errors) {
    EXPECT_THROW(hamming_cube(0), InputError);
    EXPECT_THROW(hamming_cube(9), CapError);  // 512 > default cap 256
    EXPECT_THROW(hamming_cube(70), CapError);
}

TEST(Diameter, Examples) {
    EXPECT_EQ(diameter(unit_interval()), 1);
    EXPECT_EQ(diameter(hamming_cube(3)), 3);
    EXPECT_EQ(diameter(hamming_cube(4)), 4);
    EXPECT_EQ(diameter(one_point()), 0);
    EXPECT_EQ(diameter(one_point(2.5)), 2.5);  // diagonal counts
    EXPECT_THROW(diameter(MetricSpace(0, {})), InputError);
}
