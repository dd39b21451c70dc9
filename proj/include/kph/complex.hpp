#pragma once

// Filtered chain complexes with integer boundary coefficients, plus the two
// builders used throughout: Vietoris-Rips complexes of a metric space and the
// tensor product of two filtered complexes (filtration l(s) + l(t)).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kph/bars.hpp"
#include "kph/config.hpp"
#include "kph/errors.hpp"
#include "kph/metric.hpp"

namespace kph {

using CellIndex = std::uint32_t;

struct Cell {
    int dim = 0;
    Time filtration = 0;
    /// (face index, integer coefficient); faces precede the cell.
    std::vector<std::pair<CellIndex, std::int64_t>> boundary;
    /// Tie-break key: the vertex list of a simplex, or left key, separator,
    /// right key for a tensor cell.
    std::vector<std::uint32_t> key;
};

inline constexpr std::uint32_t kKeySeparator = std::numeric_limits<std::uint32_t>::max();

/// Requested dimension meaning "no truncation" for tensor_complex.
inline constexpr int kUnbounded = -1;

namespace detail {

inline bool cell_order_less(const Cell& a, const Cell& b) {
    if (a.filtration != b.filtration) return a.filtration < b.filtration;
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.key < b.key;
}

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t s = a + b;
    return s < a ? std::numeric_limits<std::uint64_t>::max() : s;
}

/// binom[v][k] = C(v, k) for v <= n, k <= kmax, saturating at uint64 max.
inline std::vector<std::vector<std::uint64_t>> binomial_table(std::size_t n, std::size_t kmax) {
    std::vector<std::vector<std::uint64_t>> t(n + 1, std::vector<std::uint64_t>(kmax + 1, 0));
    for (std::size_t v = 0; v <= n; ++v) {
        t[v][0] = 1;
        for (std::size_t k = 1; k <= kmax && k <= v; ++k)
            t[v][k] = saturating_add(t[v - 1][k - 1], k <= v - 1 ? t[v - 1][k] : 0);
    }
    return t;
}

inline std::int64_t mod_prime(std::int64_t c, std::int64_t p) {
    c %= p;
    return c < 0 ? c + p : c;
}

} // namespace detail

class FilteredComplex {
public:
    FilteredComplex() = default;

    /// Takes ownership of an ordered cell list and validates it.
    /// `max_dim` is the build dimension; `complete` says that no cells of the
    /// underlying complex were truncated away above it.
    FilteredComplex(std::vector<Cell> cells, int max_dim, bool complete)
        : cells_(std::move(cells)), max_dim_(max_dim), complete_(complete) {
        validate();
    }

    const std::vector<Cell>& cells() const noexcept { return cells_; }
    const Cell& operator[](std::size_t i) const { return cells_[i]; }
    std::size_t size() const noexcept { return cells_.size(); }
    bool empty() const noexcept { return cells_.empty(); }
    int max_dim() const noexcept { return max_dim_; }
    bool complete() const noexcept { return complete_; }

    /// PH_n of this complex is exact for n < exact_dim_bound(). In a
    /// truncated complex the build dimension itself only carries cycles.
    int exact_dim_bound() const noexcept { return complete_ ? max_dim_ + 1 : max_dim_; }

    std::size_t count(int dim) const {
        return static_cast<std::size_t>(std::count_if(
            cells_.begin(), cells_.end(), [dim](const Cell& c) { return c.dim == dim; }));
    }

    std::string label(std::size_t i) const {
        std::string out = "[";
        bool first = true;
        for (std::uint32_t k : cells_[i].key) {
            if (k == kKeySeparator) {
                out += "]x[";
                first = true;
                continue;
            }
            if (!first) out += ',';
            out += std::to_string(k);
            first = false;
        }
        return out + "]";
    }

    /// Checks that the boundary of every boundary vanishes modulo p.
    bool boundary_squared_vanishes(std::int64_t p) const {
        std::unordered_map<CellIndex, std::int64_t> acc;
        for (const Cell& c : cells_) {
            acc.clear();
            for (auto [face, coef] : c.boundary)
                for (auto [ff, fc] : cells_[face].boundary)
                    acc[ff] = detail::mod_prime(acc[ff] + detail::mod_prime(coef, p) * detail::mod_prime(fc, p), p);
            for (auto& [_, v] : acc)
                if (v != 0) return false;
        }
        return true;
    }

    /// One cell per line: `id dim filtration boundary-pairs label`; boundary
    /// pairs are `face:coef` joined by commas, or `-` when empty.
    void dump(std::ostream& os) const {
        for (std::size_t i = 0; i < cells_.size(); ++i) {
            const Cell& c = cells_[i];
            os << i << ' ' << c.dim << ' ' << c.filtration << ' ';
            if (c.boundary.empty()) os << '-';
            for (std::size_t k = 0; k < c.boundary.size(); ++k) {
                if (k) os << ',';
                os << c.boundary[k].first << ':' << c.boundary[k].second;
            }
            os << ' ' << label(i) << '\n';
        }
    }

private:
    void validate() const {
        if (max_dim_ < 0) throw ComplexError("negative build dimension");
        for (std::size_t i = 0; i < cells_.size(); ++i) {
            const Cell& c = cells_[i];
            const std::string where = "cell " + std::to_string(i);
            if (c.dim < 0 || c.dim > max_dim_) throw ComplexError(where + ": dimension out of range");
            if (!(c.filtration >= 0.0) || !std::isfinite(c.filtration))
                throw ComplexError(where + ": filtration must be finite and nonnegative");
            if (c.dim == 0 && !c.boundary.empty()) throw ComplexError(where + ": vertex with boundary");
            for (auto [face, coef] : c.boundary) {
                if (face >= i) throw ComplexError(where + ": face " + std::to_string(face) + " does not precede it");
                const Cell& f = cells_[face];
                if (f.dim != c.dim - 1) throw ComplexError(where + ": face " + std::to_string(face) + " has wrong dimension");
                if (f.filtration > c.filtration)
                    throw ComplexError(where + ": face " + std::to_string(face) + " enters later than the cell");
                if (coef == 0) throw ComplexError(where + ": zero boundary coefficient");
            }
            if (i > 0 && detail::cell_order_less(c, cells_[i - 1]))
                throw ComplexError(where + ": cells not sorted by (filtration, dimension, key)");
        }
    }

    std::vector<Cell> cells_;
    int max_dim_ = 0;
    bool complete_ = true;
};

/// Vietoris-Rips complex: every vertex set of size <= maxdim + 1 is a simplex
/// whose filtration is the maximum pairwise distance among its vertices,
/// diagonal entries included. Boundary signs follow the increasing vertex order.
inline FilteredComplex vietoris_rips(const MetricSpace& x, int maxdim, const Options& opt = {}) {
    if (maxdim < 0) throw InputError("maxdim must be >= 0");
    const std::size_t n = x.size();
    if (n > opt.limits.max_points) throw CapError("point count", n, opt.limits.max_points);
    if (n == 0) return FilteredComplex({}, maxdim, true);

    const int top = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(maxdim), n - 1));
    const auto binom = detail::binomial_table(n, static_cast<std::size_t>(top) + 1);
    std::uint64_t total = 0;
    for (int d = 0; d <= top; ++d) total = detail::saturating_add(total, binom[n][static_cast<std::size_t>(d) + 1]);
    if (total > opt.limits.cell_cap) throw CapError("Vietoris-Rips cell count", total, opt.limits.cell_cap);

    // Simplices grouped by first vertex; depth-first enumeration in increasing
    // vertex order yields lexicographic order within each dimension.
    struct Bucket {
        std::vector<std::vector<std::uint32_t>> verts;  // per dim, flattened
        std::vector<std::vector<Time>> filt;            // per dim
    };
    std::vector<Bucket> buckets(n);
    detail::parallel_for(n, opt.threads, [&](std::size_t v0) {
        Bucket& b = buckets[v0];
        b.verts.resize(static_cast<std::size_t>(top) + 1);
        b.filt.resize(static_cast<std::size_t>(top) + 1);
        std::vector<std::uint32_t> cur{static_cast<std::uint32_t>(v0)};
        auto extend = [&](auto& self, Time f) -> void {
            const std::size_t d = cur.size() - 1;
            b.verts[d].insert(b.verts[d].end(), cur.begin(), cur.end());
            b.filt[d].push_back(f);
            if (static_cast<int>(d) == top) return;
            for (std::size_t w = cur.back() + 1; w < n; ++w) {
                Time g = std::max(f, x(w, w));
                for (std::uint32_t u : cur) g = std::max(g, x(u, w));
                cur.push_back(static_cast<std::uint32_t>(w));
                self(self, g);
                cur.pop_back();
            }
        };
        extend(extend, x(v0, v0));
    });

    // Per-dimension arrays in lexicographic order.
    const auto dims = static_cast<std::size_t>(top) + 1;
    std::vector<std::vector<std::uint32_t>> verts(dims);
    std::vector<std::vector<Time>> filt(dims);
    for (std::size_t d = 0; d < dims; ++d) {
        for (auto& b : buckets) {
            verts[d].insert(verts[d].end(), b.verts[d].begin(), b.verts[d].end());
            filt[d].insert(filt[d].end(), b.filt[d].begin(), b.filt[d].end());
        }
    }
    buckets.clear();

    auto colex = [&](const std::uint32_t* s, std::size_t len) {
        std::uint64_t r = 0;
        for (std::size_t i = 0; i < len; ++i) r += binom[s[i]][i + 1];
        return r;
    };

    // Global order by (filtration, dim, lexicographic rank).
    std::vector<std::pair<std::uint32_t, std::uint32_t>> order;  // (dim, lex rank)
    order.reserve(total);
    for (std::size_t d = 0; d < dims; ++d)
        for (std::size_t r = 0; r < filt[d].size(); ++r)
            order.emplace_back(static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(r));
    std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
        const Time fa = filt[a.first][a.second], fb = filt[b.first][b.second];
        if (fa != fb) return fa < fb;
        return a < b;
    });

    // global_of[d][colex rank] -> position in the final order.
    std::vector<std::vector<CellIndex>> global_of(dims);
    for (std::size_t d = 0; d < dims; ++d) global_of[d].resize(filt[d].size());
    for (std::size_t g = 0; g < order.size(); ++g) {
        const auto [d, r] = order[g];
        global_of[d][colex(&verts[d][static_cast<std::size_t>(r) * (d + 1)], d + 1)] = static_cast<CellIndex>(g);
    }

    std::vector<Cell> cells(order.size());
    const unsigned workers = std::max(1U, opt.threads);
    detail::parallel_for(workers, workers, [&](std::size_t w) {
        std::vector<std::uint32_t> face;
        for (std::size_t g = w; g < order.size(); g += workers) {
            const auto [d, r] = order[g];
            const std::uint32_t* s = &verts[d][static_cast<std::size_t>(r) * (d + 1)];
            Cell& c = cells[g];
            c.dim = static_cast<int>(d);
            c.filtration = filt[d][r];
            c.key.assign(s, s + d + 1);
            if (d == 0) continue;
            c.boundary.reserve(d + 1);
            for (std::size_t i = 0; i <= d; ++i) {
                face.clear();
                for (std::size_t k = 0; k <= d; ++k)
                    if (k != i) face.push_back(s[k]);
                c.boundary.emplace_back(global_of[d - 1][colex(face.data(), d)], i % 2 == 0 ? 1 : -1);
            }
        }
    });

    return FilteredComplex(std::move(cells), maxdim, static_cast<std::size_t>(maxdim) + 1 >= n);
}

/// Tensor product of filtered complexes: cells (s, t) of dimension
/// dim s + dim t, filtration l(s) + l(t), boundary ds (x) t + (-1)^dim s s (x) dt.
/// Truncated at `maxdim` (kUnbounded for none) and at the build dimension of
/// any truncated factor, so that every surfaced dimension stays exact.
inline FilteredComplex tensor_complex(const FilteredComplex& a, const FilteredComplex& b,
                                      int maxdim = kUnbounded, const Options& opt = {}) {
    int limit = a.max_dim() + b.max_dim();
    if (maxdim != kUnbounded) {
        if (maxdim < 0) throw InputError("maxdim must be >= 0");
        limit = std::min(limit, maxdim);
    }
    if (!a.complete()) limit = std::min(limit, a.max_dim());
    if (!b.complete()) limit = std::min(limit, b.max_dim());
    const bool complete = a.complete() && b.complete() &&
                          (maxdim == kUnbounded || maxdim >= a.max_dim() + b.max_dim());

    // Pairs in (i, j) order; right indices per left cell are increasing.
    std::vector<std::size_t> offset(a.size() + 1, 0);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t k = 0;
        for (const Cell& c : b.cells())
            if (a[i].dim + c.dim <= limit) ++k;
        total = detail::saturating_add(total, k);
        if (total > opt.limits.cell_cap) throw CapError("tensor complex cell count", total, opt.limits.cell_cap);
        offset[i + 1] = static_cast<std::size_t>(total);
    }
    std::vector<std::pair<CellIndex, CellIndex>> pairs;
    pairs.reserve(total);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (a[i].dim + b[j].dim <= limit) pairs.emplace_back(static_cast<CellIndex>(i), static_cast<CellIndex>(j));

    auto pair_index = [&](CellIndex i, CellIndex j) {
        auto first = pairs.begin() + static_cast<std::ptrdiff_t>(offset[i]);
        auto last = pairs.begin() + static_cast<std::ptrdiff_t>(offset[i + 1]);
        auto it = std::lower_bound(first, last, std::make_pair(i, j));
        return static_cast<std::size_t>(it - pairs.begin());
    };

    std::vector<Cell> raw(pairs.size());
    detail::parallel_for(pairs.size(), opt.threads, [&](std::size_t p) {
        const auto [i, j] = pairs[p];
        Cell& c = raw[p];
        c.dim = a[i].dim + b[j].dim;
        c.filtration = a[i].filtration + b[j].filtration;
        c.key = a[i].key;
        c.key.push_back(kKeySeparator);
        c.key.insert(c.key.end(), b[j].key.begin(), b[j].key.end());
    });

    std::vector<std::size_t> order(raw.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) {
        if (detail::cell_order_less(raw[p], raw[q])) return true;
        if (detail::cell_order_less(raw[q], raw[p])) return false;
        return p < q;
    });
    std::vector<CellIndex> position(raw.size());
    for (std::size_t g = 0; g < order.size(); ++g) position[order[g]] = static_cast<CellIndex>(g);

    std::vector<Cell> cells(raw.size());
    detail::parallel_for(order.size(), opt.threads, [&](std::size_t g) {
        const std::size_t p = order[g];
        const auto [i, j] = pairs[p];
        Cell c = std::move(raw[p]);
        const std::int64_t sign = a[i].dim % 2 == 0 ? 1 : -1;
        for (auto [f, coef] : a[i].boundary)
            c.boundary.emplace_back(position[pair_index(f, j)], coef);
        for (auto [f, coef] : b[j].boundary)
            c.boundary.emplace_back(position[pair_index(i, f)], sign * coef);
        cells[g] = std::move(c);
    });

    return FilteredComplex(std::move(cells), limit, complete);
}

struct InequalityViolation {
    std::vector<std::size_t> vertices;  // product point indices
    Time lx = 0, ly = 0, lxy = 0;
};

struct InequalityReport {
    bool holds = true;
    std::uint64_t checked = 0;
    std::optional<InequalityViolation> first_violation;
};

/// For every simplex S of the product with at most maxdim + 1 vertices,
/// checks max(l_X(pX S), l_Y(pY S)) <= l_XxY(S) <= l_X(pX S) + l_Y(pY S).
/// `product` must be indexed x-major over X x Y; normally product_sum(x, y).
inline InequalityReport filtration_inequality_check(const MetricSpace& x, const MetricSpace& y, int maxdim,
                                                    const MetricSpace& product, const Limits& limits = {}) {
    if (maxdim < 0) throw InputError("maxdim must be >= 0");
    const std::size_t ny = y.size();
    const std::size_t n = product.size();
    if (n != x.size() * ny) throw InputError("product space has the wrong number of points");
    const auto top = std::min<std::size_t>(static_cast<std::size_t>(maxdim) + 1, n);
    const auto binom = detail::binomial_table(n, top);
    std::uint64_t total = 0;
    for (std::size_t k = 1; k <= top; ++k) total = detail::saturating_add(total, binom[n][k]);
    if (total > limits.cell_cap) throw CapError("product simplex count", total, limits.cell_cap);

    auto max_length = [](const MetricSpace& m, const std::vector<std::size_t>& pts) {
        Time l = 0;
        for (std::size_t u : pts)
            for (std::size_t v : pts) l = std::max(l, m(u, v));
        return l;
    };

    InequalityReport report;
    std::vector<std::size_t> cur, px, py;
    auto visit = [&](auto& self, std::size_t next) -> void {
        if (!cur.empty()) {
            px.clear();
            py.clear();
            for (std::size_t v : cur) {
                px.push_back(v / ny);
                py.push_back(v % ny);
            }
            const Time lx = max_length(x, px), ly = max_length(y, py), lxy = max_length(product, cur);
            ++report.checked;
            if (!(std::max(lx, ly) <= lxy && lxy <= lx + ly) && report.holds) {
                report.holds = false;
                report.first_violation = InequalityViolation{cur, lx, ly, lxy};
            }
        }
        if (cur.size() == top) return;
        for (std::size_t w = next; w < n; ++w) {
            cur.push_back(w);
            self(self, w + 1);
            cur.pop_back();
        }
    };
    visit(visit, 0);
    return report;
}

inline InequalityReport filtration_inequality_check(const MetricSpace& x, const MetricSpace& y, int maxdim,
                                                    const Limits& limits = {}) {
    return filtration_inequality_check(x, y, maxdim, product_sum(x, y, limits), limits);
}

} // namespace kph
