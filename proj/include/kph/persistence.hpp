#pragma once

// Barcodes of a filtered complex by column reduction of its boundary matrix
// over a prime field. After full reduction every pivot row is owned by at
// most one column, which is exactly the normal form the bars are read from.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kph/bars.hpp"
#include "kph/complex.hpp"
#include "kph/errors.hpp"

namespace kph {

inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/// Arithmetic in Z/p for a prime p < 2^31.
class PrimeField {
public:
    explicit PrimeField(std::uint64_t p) : p_(static_cast<std::uint32_t>(p)) {
        if (p >= (std::uint64_t{1} << 31) || !is_prime(p))
            throw InputError("field characteristic must be a prime below 2^31, got " + std::to_string(p));
    }

    std::uint32_t characteristic() const noexcept { return p_; }

    std::uint32_t from_int(std::int64_t v) const noexcept {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
        const std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
    }
    std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
        return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
    }
    std::uint32_t inv(std::uint32_t a) const noexcept {
        // Fermat: a^(p-2).
        std::uint64_t result = 1, base = a, e = p_ - 2;
        while (e) {
            if (e & 1) result = result * base % p_;
            base = base * base % p_;
            e >>= 1;
        }
        return static_cast<std::uint32_t>(result);
    }

private:
    std::uint32_t p_;
};

enum class CellRole : std::uint8_t {
    essential,  // creates a class that never dies
    positive,   // creates a class killed by its partner
    negative,   // kills the class created by its partner
};

using Column = std::vector<std::pair<CellIndex, std::uint32_t>>;  // (row, coefficient), rows increasing

inline constexpr std::int64_t kUnpaired = -1;

struct ReductionState {
    std::uint32_t characteristic = 2;
    std::vector<CellRole> role;
    std::vector<std::int64_t> partner;       // paired cell or kUnpaired
    std::vector<std::int64_t> pivot_column;  // row -> column owning it, or kUnpaired
    std::vector<Column> reduced;             // nonzero exactly for negative cells
    GradedBarcode barcode;                   // dims below exact_dim_bound()
};

namespace detail {

/// col -= factor * other, over the field.
inline void subtract_multiple(Column& col, const Column& other, std::uint32_t factor,
                              const PrimeField& f, Column& scratch) {
    scratch.clear();
    scratch.reserve(col.size() + other.size());
    auto a = col.begin(), ae = col.end();
    auto b = other.begin(), be = other.end();
    while (a != ae || b != be) {
        if (b == be || (a != ae && a->first < b->first)) {
            scratch.push_back(*a++);
        } else if (a == ae || b->first < a->first) {
            scratch.emplace_back(b->first, f.neg(f.mul(factor, b->second)));
            ++b;
        } else {
            const std::uint32_t v = f.add(a->second, f.neg(f.mul(factor, b->second)));
            if (v != 0) scratch.emplace_back(a->first, v);
            ++a;
            ++b;
        }
    }
    col.swap(scratch);
}

} // namespace detail

/// Full reduction with clearing: dimensions are processed top-down, and a
/// column whose cell already appeared as a pivot is known to reduce to zero.
inline ReductionState reduce_with_state(const FilteredComplex& c, std::uint64_t p = 2) {
    const PrimeField field(p);
    const std::size_t n = c.size();
    ReductionState st;
    st.characteristic = field.characteristic();
    st.role.assign(n, CellRole::essential);
    st.partner.assign(n, kUnpaired);
    st.pivot_column.assign(n, kUnpaired);
    st.reduced.resize(n);

    int top = 0;
    for (const Cell& cell : c.cells()) top = std::max(top, cell.dim);
    std::vector<std::vector<CellIndex>> by_dim(static_cast<std::size_t>(top) + 1);
    for (std::size_t j = 0; j < n; ++j) by_dim[static_cast<std::size_t>(c[j].dim)].push_back(static_cast<CellIndex>(j));

    std::vector<bool> cleared(n, false);
    Column col, scratch;
    for (int d = top; d >= 1; --d) {
        for (CellIndex j : by_dim[static_cast<std::size_t>(d)]) {
            if (cleared[j]) continue;
            col.clear();
            for (auto [face, coef] : c[j].boundary) {
                const std::uint32_t v = field.from_int(coef);
                if (v != 0) col.emplace_back(face, v);
            }
            std::sort(col.begin(), col.end());
            // Merge repeated faces.
            std::size_t w = 0;
            for (std::size_t r = 0; r < col.size(); ++r) {
                if (w > 0 && col[w - 1].first == col[r].first) {
                    col[w - 1].second = field.add(col[w - 1].second, col[r].second);
                    if (col[w - 1].second == 0) --w;
                } else {
                    col[w++] = col[r];
                }
            }
            col.resize(w);

            while (!col.empty()) {
                const auto [low, coef] = col.back();
                const std::int64_t k = st.pivot_column[low];
                if (k == kUnpaired) break;
                const Column& other = st.reduced[static_cast<std::size_t>(k)];
                const std::uint32_t factor = field.mul(coef, field.inv(other.back().second));
                detail::subtract_multiple(col, other, factor, field, scratch);
            }
            if (col.empty()) continue;

            const CellIndex low = col.back().first;
            st.pivot_column[low] = j;
            st.role[j] = CellRole::negative;
            st.role[low] = CellRole::positive;
            st.partner[j] = low;
            st.partner[low] = j;
            cleared[low] = true;
            st.reduced[j] = col;
        }
    }

    const int bound = c.exact_dim_bound();
    for (int d = 0; d < bound; ++d) st.barcode.set(d, Barcode{});
    std::vector<std::vector<Bar>> bars(static_cast<std::size_t>(std::max(bound, 0)));
    for (std::size_t j = 0; j < n; ++j) {
        const int d = c[j].dim;
        if (d >= bound) continue;
        if (st.role[j] == CellRole::essential) {
            bars[static_cast<std::size_t>(d)].emplace_back(c[j].filtration, kInfinity);
        } else if (st.role[j] == CellRole::positive) {
            const auto killer = static_cast<std::size_t>(st.partner[j]);
            if (auto bar = Bar::make(c[j].filtration, c[killer].filtration))
                bars[static_cast<std::size_t>(d)].push_back(*bar);
        }
    }
    for (int d = 0; d < bound; ++d) st.barcode.set(d, Barcode(std::move(bars[static_cast<std::size_t>(d)])));
    return st;
}

/// Barcode of every exact dimension of the complex (see exact_dim_bound()).
inline GradedBarcode reduce(const FilteredComplex& c, std::uint64_t p = 2) {
    return reduce_with_state(c, p).barcode;
}

/// Right-continuous step function: values[i] holds on [breaks[i], breaks[i+1]),
/// the last value on [breaks.back(), infinity). breaks[0] == 0.
struct StepFunction {
    std::vector<Time> breaks;
    std::vector<std::size_t> values;

    std::size_t at(Time t) const {
        auto it = std::upper_bound(breaks.begin(), breaks.end(), t);
        if (it == breaks.begin()) return 0;
        return values[static_cast<std::size_t>(it - breaks.begin()) - 1];
    }

    friend bool operator==(const StepFunction&, const StepFunction&) = default;
};

/// t -> dim PH_n at degree t, with breakpoints at the critical filtration values.
inline StepFunction betti_curve(const FilteredComplex& c, std::uint64_t p, int n) {
    if (n < 0) throw InputError("negative homological dimension");
    if (n >= c.exact_dim_bound() && c.count(n) > 0)
        throw InputError("dimension " + std::to_string(n) + " is truncated: only cycles are known");

    const Barcode bars = n < c.exact_dim_bound() ? reduce(c, p)[n] : Barcode{};
    std::vector<Time> critical{0.0};
    for (const Cell& cell : c.cells()) critical.push_back(cell.filtration);
    std::sort(critical.begin(), critical.end());
    critical.erase(std::unique(critical.begin(), critical.end()), critical.end());

    StepFunction out;
    for (Time t : critical) {
        const std::size_t v = dim_at(bars, t);
        if (!out.values.empty() && out.values.back() == v) continue;
        out.breaks.push_back(t);
        out.values.push_back(v);
    }
    return out;
}

} // namespace kph
