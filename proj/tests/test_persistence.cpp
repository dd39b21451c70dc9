#include <gtest/gtest.h>

#include <random>

#include "kph/complex.hpp"
#include "kph/metric.hpp"
#include "kph/persistence.hpp"
#include "oracles.hpp"

using namespace kph;

namespace {

MetricSpace triangle345() { return MetricSpace::validate({{0, 3, 4}, {3, 0, 5}, {4, 5, 0}}); }

// Barcode agrees with brute-force Betti numbers at every critical value.
void expect_matches_oracle(const FilteredComplex& c, std::uint64_t p) {
    const GradedBarcode bc = reduce(c, p);
    const int top = c.exact_dim_bound() - 1;
    for (Time t : oracle::critical_values(c)) {
        const auto betti = oracle::betti_at(c, t, static_cast<std::int64_t>(p), top);
        for (int n = 0; n <= top; ++n)
            ASSERT_EQ(dim_at(bc[n], t), betti[static_cast<std::size_t>(n)]) << "t=" << t << " n=" << n << " p=" << p;
    }
}

} // namespace

TEST(PrimeField, Arithmetic) {
    const PrimeField f(7);
    EXPECT_EQ(f.from_int(-1), 6U);
    EXPECT_EQ(f.mul(3, f.inv(3)), 1U);
    EXPECT_EQ(f.add(5, 4), 2U);
    EXPECT_THROW(PrimeField(4), InputError);
    EXPECT_THROW(PrimeField(1), InputError);
    EXPECT_THROW(PrimeField(4294967311ULL), InputError);
}

TEST(Reduce, Interval) {
    const GradedBarcode bc = reduce(vietoris_rips(unit_interval(), 1));
    EXPECT_EQ(bc[0], (Barcode{Bar(0, 1), Bar(0, kInfinity)}));
    EXPECT_TRUE(bc.has(1));
    EXPECT_TRUE(bc[1].empty());
}

TEST(Reduce, HammingSquare) {
    const GradedBarcode bc = reduce(vietoris_rips(hamming_cube(2), 2));
    EXPECT_EQ(bc[0], (Barcode{Bar(0, 1), Bar(0, 1), Bar(0, 1), Bar(0, kInfinity)}));
    EXPECT_EQ(bc[1], Barcode{Bar(1, 2)});
    EXPECT_FALSE(bc.has(2));  // truncated build dimension
}

TEST(Reduce, Triangle345) {
    const FilteredComplex c = vietoris_rips(triangle345(), 2);
    const GradedBarcode bc = reduce(c);
    EXPECT_EQ(bc[0], (Barcode{Bar(0, 3), Bar(0, 4), Bar(0, kInfinity)}));
    EXPECT_TRUE(bc[1].empty());
    EXPECT_TRUE(bc[2].empty());
    expect_matches_oracle(c, 2);
}

TEST(Reduce, FieldIndependenceOnFixtures) {
    std::vector<FilteredComplex> fixtures;
    for (int k = 1; k <= 3; ++k) fixtures.push_back(vietoris_rips(hamming_cube(k), 4));
    for (const auto& [x, y] : oracle::random_pairs(21, 5, 4, 3)) fixtures.push_back(vietoris_rips(product_sum(x, y), 3));
    for (const auto& c : fixtures) {
        const GradedBarcode b2 = reduce(c, 2);
        EXPECT_EQ(b2, reduce(c, 3));
        EXPECT_EQ(b2, reduce(c, 5));
    }
}

// RP^2 has H_1 = Z/2, so mod-2 and mod-3 homology differ. Minimal 6-vertex
// triangulation, all at filtration 0.
TEST(Reduce, TorsionDependsOnField) {
    const std::vector<std::vector<std::uint32_t>> tris{{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                                       {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {1, 3, 5}, {2, 4, 5}};
    std::set<std::vector<std::uint32_t>> all;
    for (const auto& t : tris)
        for (std::uint32_t mask = 1; mask < 8; ++mask) {
            std::vector<std::uint32_t> f;
            for (int i = 0; i < 3; ++i)
                if (mask >> i & 1U) f.push_back(t[static_cast<std::size_t>(i)]);
            all.insert(f);
        }
    std::vector<std::pair<std::vector<std::uint32_t>, Time>> simplices;
    for (const auto& s : all) simplices.emplace_back(s, 0);
    const FilteredComplex c = oracle::complex_from_simplices(simplices, 2, true);
    EXPECT_EQ(reduce(c, 2)[1].size(), 1U);
    EXPECT_EQ(reduce(c, 2)[2].size(), 1U);
    EXPECT_EQ(reduce(c, 3)[1].size(), 0U);
    EXPECT_EQ(reduce(c, 3)[2].size(), 0U);
    expect_matches_oracle(c, 2);
    expect_matches_oracle(c, 3);
}

TEST(Reduce, RandomComplexesMatchRankNullity) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const FilteredComplex c = oracle::random_complex(rng, 8, 3);
        ASSERT_LE(c.size(), 200U);
        for (std::uint64_t p : {2, 3, 5}) expect_matches_oracle(c, p);
    }
}

TEST(Reduce, RolesAccountForEveryCell) {
    const FilteredComplex c = vietoris_rips(hamming_cube(3), 7);  // complete: 8 points
    ASSERT_TRUE(c.complete());
    const ReductionState st = reduce_with_state(c, 2);
    std::size_t pos = 0, neg = 0, ess = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        switch (st.role[i]) {
        case CellRole::positive: ++pos; EXPECT_EQ(st.partner[static_cast<std::size_t>(st.partner[i])], static_cast<std::int64_t>(i)); break;
        case CellRole::negative: ++neg; EXPECT_FALSE(st.reduced[i].empty()); break;
        case CellRole::essential: ++ess; break;
        }
    }
    EXPECT_EQ(pos, neg);
    EXPECT_EQ(ess, 1U);  // a contractible full simplex
    EXPECT_EQ(pos + neg + ess, c.size());
}

TEST(Reduce, EulerCharacteristicAtEveryCriticalValue) {
    std::vector<FilteredComplex> fixtures;
    for (int k = 1; k <= 3; ++k) fixtures.push_back(vietoris_rips(hamming_cube(k), (1 << k) - 1));
    fixtures.push_back(vietoris_rips(triangle345(), 2));
    for (const auto& c : fixtures) {
        ASSERT_TRUE(c.complete());
        const GradedBarcode bc = reduce(c);
        for (Time t : oracle::critical_values(c)) {
            long chi_cells = 0, chi_betti = 0;
            for (const Cell& cell : c.cells())
                if (cell.filtration <= t) chi_cells += cell.dim % 2 ? -1 : 1;
            for (const auto& [n, b] : bc.by_dim()) chi_betti += (n % 2 ? -1 : 1) * static_cast<long>(dim_at(b, t));
            EXPECT_EQ(chi_cells, chi_betti) << "t=" << t;
        }
    }
}

TEST(BettiCurve, Interval) {
    const StepFunction f = betti_curve(vietoris_rips(unit_interval(), 1), 2, 0);
    EXPECT_EQ(f.breaks, (std::vector<Time>{0, 1}));
    EXPECT_EQ(f.values, (std::vector<std::size_t>{2, 1}));
    EXPECT_EQ(f.at(0.5), 2U);
    EXPECT_EQ(f.at(100), 1U);
}

TEST(BettiCurve, HammingSquareLoop) {
    const StepFunction f = betti_curve(vietoris_rips(hamming_cube(2), 2), 2, 1);
    EXPECT_EQ(f.breaks, (std::vector<Time>{0, 1, 2}));
    EXPECT_EQ(f.values, (std::vector<std::size_t>{0, 1, 0}));
}

TEST(BettiCurve, EmptyAndTruncatedDimensions) {
    const StepFunction f = betti_curve(vietoris_rips(unit_interval(), 1), 2, 5);
    EXPECT_EQ(f.values, std::vector<std::size_t>{0});
    EXPECT_THROW(betti_curve(vietoris_rips(hamming_cube(2), 2), 2, 2), InputError);
    EXPECT_THROW(betti_curve(vietoris_rips(unit_interval(), 1), 2, -1), InputError);
}
