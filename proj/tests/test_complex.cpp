#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "kph/complex.hpp"
#include "kph/metric.hpp"
#include "oracles.hpp"

using namespace kph;

namespace {

std::string dump_string(const FilteredComplex& c) {
    std::ostringstream os;
    c.dump(os);
    return os.str();
}

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

Cell vertex(Time f, std::uint32_t key) { return Cell{0, f, {}, {key}}; }

} // namespace

TEST(VietorisRips, Interval) {
    const FilteredComplex c = vietoris_rips(unit_interval(), 1);
    ASSERT_EQ(c.size(), 3U);
    EXPECT_EQ(c.count(0), 2U);
    EXPECT_EQ(c.count(1), 1U);
    EXPECT_EQ(c[0].filtration, 0);
    EXPECT_EQ(c[1].filtration, 0);
    EXPECT_EQ(c[2].filtration, 1);
    EXPECT_TRUE(c.complete());
    EXPECT_EQ(c.exact_dim_bound(), 2);
}

TEST(VietorisRips, HammingSquare) {
    const FilteredComplex c = vietoris_rips(hamming_cube(2), 2);
    EXPECT_EQ(c.size(), 14U);
    EXPECT_EQ(c.count(1), 6U);
    EXPECT_EQ(c.count(2), 4U);
    std::size_t edges_at_1 = 0;
    for (const Cell& cell : c.cells()) {
        if (cell.dim == 1 && cell.filtration == 1) ++edges_at_1;
        if (cell.dim == 2) {
            EXPECT_EQ(cell.filtration, 2);
        }
    }
    EXPECT_EQ(edges_at_1, 4U);
    EXPECT_FALSE(c.complete());
    EXPECT_EQ(c.exact_dim_bound(), 2);
}

TEST(VietorisRips, TriangleEntersAtLongestEdge) {
    const FilteredComplex c = vietoris_rips(MetricSpace::validate({{0, 3, 4}, {3, 0, 5}, {4, 5, 0}}), 2);
    ASSERT_EQ(c.size(), 7U);
    EXPECT_EQ(c[6].dim, 2);
    EXPECT_EQ(c[6].filtration, 5);
    EXPECT_TRUE(c.complete());
}

TEST(VietorisRips, DiagonalEntersVertexFiltration) {
    const FilteredComplex c = vietoris_rips(MetricSpace::validate({{2, 1}, {1, 0}}), 1);
    ASSERT_EQ(c.size(), 3U);
    // The edge cannot precede its face at 2.
    EXPECT_EQ(c[2].dim, 1);
    EXPECT_EQ(c[2].filtration, 2);
}

TEST(VietorisRips, CellCountsAreBinomial) {
    std::mt19937_64 rng(3);
    for (std::size_t n = 1; n <= 9; ++n) {
        const MetricSpace x = oracle::random_space(rng, n);
        for (int maxdim = 0; maxdim <= 4; ++maxdim) {
            const FilteredComplex c = vietoris_rips(x, maxdim);
            for (int d = 0; d <= maxdim; ++d)
                EXPECT_EQ(c.count(d), binom(n, static_cast<std::uint64_t>(d) + 1)) << "n=" << n << " d=" << d;
        }
    }
}

TEST(VietorisRips, BoundarySquaredVanishes) {
    for (std::int64_t p : {2, 3, 5}) {
        EXPECT_TRUE(vietoris_rips(hamming_cube(3), 4).boundary_squared_vanishes(p));
        EXPECT_TRUE(tensor_complex(vietoris_rips(hamming_cube(2), 3), vietoris_rips(unit_interval(), 1))
                        .boundary_squared_vanishes(p));
    }
}

TEST(VietorisRips, CellCap) {
    Options opt;
    opt.limits.cell_cap = 10;
    EXPECT_THROW(vietoris_rips(hamming_cube(3), 2, opt), CapError);
}

TEST(VietorisRips, EmptySpace) {
    const FilteredComplex c = vietoris_rips(MetricSpace(0, {}), 2);
    EXPECT_TRUE(c.empty());
    EXPECT_TRUE(c.complete());
}

TEST(VietorisRips, DumpFormat) {
    EXPECT_EQ(dump_string(vietoris_rips(unit_interval(), 1)), "0 0 0 - [0]\n1 0 0 - [1]\n2 1 1 1:1,0:-1 [0,1]\n");
}

TEST(VietorisRips, ThreadCountDoesNotChangeOutput) {
    std::mt19937_64 rng(4);
    const MetricSpace x = oracle::random_space(rng, 9);
    Options one, many;
    one.threads = 1;
    many.threads = 8;
    EXPECT_EQ(dump_string(vietoris_rips(x, 4, one)), dump_string(vietoris_rips(x, 4, many)));
    const FilteredComplex a = vietoris_rips(hamming_cube(2), 3);
    EXPECT_EQ(dump_string(tensor_complex(a, a, 3, one)), dump_string(tensor_complex(a, a, 3, many)));
}

TEST(TensorComplex, OnePointIsUnit) {
    const FilteredComplex base = vietoris_rips(unit_interval(), 1);
    const FilteredComplex t = tensor_complex(base, vietoris_rips(one_point(), 0));
    ASSERT_EQ(t.size(), base.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        EXPECT_EQ(t[i].dim, base[i].dim);
        EXPECT_EQ(t[i].filtration, base[i].filtration);
        EXPECT_EQ(t[i].boundary, base[i].boundary);
    }
    EXPECT_EQ(t.label(2), "[0,1]x[0]");
}

TEST(TensorComplex, CellCountsAndFiltrations) {
    const FilteredComplex a = vietoris_rips(MetricSpace::validate({{0, 3, 4}, {3, 0, 5}, {4, 5, 0}}), 2);
    const FilteredComplex b = vietoris_rips(hamming_cube(2), 3);
    const FilteredComplex t = tensor_complex(a, b);
    EXPECT_EQ(t.size(), a.size() * b.size());
    for (int n = 0; n <= 5; ++n) {
        std::size_t expect = 0;
        for (int i = 0; i <= n; ++i) expect += a.count(i) * b.count(n - i);
        EXPECT_EQ(t.count(n), expect) << "n=" << n;
    }
    // Filtration is the sum of the factor filtrations: the multiset of sums agrees.
    std::multiset<Time> sums, got;
    for (const Cell& x : a.cells())
        for (const Cell& y : b.cells()) sums.insert(x.filtration + y.filtration);
    for (const Cell& c : t.cells()) got.insert(c.filtration);
    EXPECT_EQ(sums, got);
    EXPECT_TRUE(t.complete());
}

TEST(TensorComplex, TruncationLimits) {
    const FilteredComplex a = vietoris_rips(hamming_cube(3), 3);  // truncated
    const FilteredComplex b = vietoris_rips(unit_interval(), 1);  // complete
    const FilteredComplex t = tensor_complex(a, b, 5);
    EXPECT_EQ(t.max_dim(), 3);
    EXPECT_FALSE(t.complete());
    EXPECT_EQ(tensor_complex(b, b, 1).max_dim(), 1);
    EXPECT_FALSE(tensor_complex(b, b, 1).complete());
    EXPECT_THROW(tensor_complex(b, b, -2), InputError);
}

TEST(FiltrationInequality, Examples) {
    const auto i1 = unit_interval();
    const auto r1 = filtration_inequality_check(i1, i1, 2);
    EXPECT_TRUE(r1.holds);
    EXPECT_EQ(r1.checked, 4U + 6U + 4U);
    const auto r2 = filtration_inequality_check(i1, hamming_cube(2), 3);
    EXPECT_TRUE(r2.holds);
    EXPECT_EQ(r2.checked, 8U + 28U + 56U + 70U);
}

TEST(FiltrationInequality, CorruptedProductIsReported) {
    const auto i1 = unit_interval();
    std::vector<Time> d = product_sum(i1, i1).matrix();
    d[0 * 4 + 3] = d[3 * 4 + 0] = 3;  // (0,0)-(1,1) should be 2
    const MetricSpace bad(4, d);
    const auto r = filtration_inequality_check(i1, i1, 1, bad);
    ASSERT_FALSE(r.holds);
    ASSERT_TRUE(r.first_violation.has_value());
    EXPECT_EQ(r.first_violation->vertices, (std::vector<std::size_t>{0, 3}));
    EXPECT_EQ(r.first_violation->lxy, 3);
    EXPECT_EQ(r.first_violation->lx + r.first_violation->ly, 2);
}

TEST(FilteredComplex, ValidationErrors) {
    auto edge = [](Time f, std::vector<std::pair<CellIndex, std::int64_t>> b) {
        return Cell{1, f, std::move(b), {0, 1}};
    };
    EXPECT_NO_THROW(FilteredComplex({vertex(0, 0), vertex(0, 1), edge(1, {{0, -1}, {1, 1}})}, 1, true));
    // Face enters after the cell.
    EXPECT_THROW(FilteredComplex({vertex(0, 0), vertex(2, 1), edge(1, {{0, -1}, {1, 1}})}, 1, true), ComplexError);
    // Face does not precede.
    EXPECT_THROW(FilteredComplex({vertex(0, 0), edge(1, {{0, -1}, {2, 1}}), vertex(1, 1)}, 1, true), ComplexError);
    // Zero coefficient.
    EXPECT_THROW(FilteredComplex({vertex(0, 0), vertex(0, 1), edge(1, {{0, 0}, {1, 1}})}, 1, true), ComplexError);
    // Dimension above the build dimension.
    EXPECT_THROW(FilteredComplex({vertex(0, 0), vertex(0, 1), edge(1, {{0, -1}, {1, 1}})}, 0, true), ComplexError);
    // Vertex with boundary.
    EXPECT_THROW(FilteredComplex({vertex(0, 0), Cell{0, 0, {{0, 1}}, {1}}}, 0, true), ComplexError);
    // Unsorted.
    EXPECT_THROW(FilteredComplex({vertex(1, 0), vertex(0, 1)}, 0, true), ComplexError);
    // Negative filtration.
    EXPECT_THROW(FilteredComplex({vertex(-1, 0)}, 0, true), ComplexError);
}
