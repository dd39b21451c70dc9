#pragma once

// Kunneth prediction for sum-metric products and its comparison against the
// persistent homology of the product itself.
//
// The prediction in dimension n is
//     sum_{i+j=n} PH_i(X) (x) PH_j(Y)  +  sum_{i+j=n-1} Tor1(PH_i(X), PH_j(Y)).
// It agrees with PH_n(X x Y) for n = 0, 1, surjects onto it for n = 2, and is
// within interleaving distance min(diam X, diam Y) of it in every dimension.
// Interleaving distance is evaluated as the bottleneck distance of barcodes.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "kph/bars.hpp"
#include "kph/complex.hpp"
#include "kph/config.hpp"
#include "kph/errors.hpp"
#include "kph/metric.hpp"
#include "kph/persistence.hpp"

namespace kph {

/// Deepest homological dimension compare_product accepts by default.
inline constexpr int kDefaultMaxHomologyDim = 7;

inline Barcode kunneth_predict(const GradedBarcode& bx, const GradedBarcode& by, int n) {
    if (n < 0) throw InputError("negative homological dimension");
    for (int i = 0; i <= n; ++i) {
        if (!bx.has(i) || !by.has(i))
            throw InputError("factor barcode is missing dimension " + std::to_string(i) +
                             " needed to predict dimension " + std::to_string(n));
    }
    Barcode out;
    for (int i = 0; i <= n; ++i) out = direct_sum(out, tensor(bx[i], by[n - i]));
    for (int i = 0; i <= n - 1; ++i) out = direct_sum(out, tor1(bx[i], by[n - 1 - i]));
    return out;
}

/// Endpoints of both barcodes plus 0: dim_at is constant between them.
inline std::vector<Time> critical_values(const Barcode& a, const Barcode& b) {
    std::vector<Time> ts{0.0};
    for (const Barcode* bc : {&a, &b}) {
        for (const Bar& bar : *bc) {
            ts.push_back(bar.birth());
            if (bar.finite()) ts.push_back(bar.death());
        }
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
}

/// True when dim_at(lower, t) <= dim_at(upper, t) for all t.
inline bool pointwise_dominated(const Barcode& lower, const Barcode& upper) {
    for (Time t : critical_values(lower, upper))
        if (dim_at(lower, t) > dim_at(upper, t)) return false;
    return true;
}

namespace detail {

/// Perfect matching test on a bipartite graph given as adjacency lists.
class BipartiteMatcher {
public:
    explicit BipartiteMatcher(std::vector<std::vector<std::size_t>> adj, std::size_t right)
        : adj_(std::move(adj)), match_right_(right, kNone) {}

    std::size_t max_matching() {
        std::size_t size = 0;
        for (std::size_t u = 0; u < adj_.size(); ++u) {
            seen_.assign(match_right_.size(), false);
            if (augment(u)) ++size;
        }
        return size;
    }

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    bool augment(std::size_t u) {
        for (std::size_t v : adj_[u]) {
            if (seen_[v]) continue;
            seen_[v] = true;
            if (match_right_[v] == kNone || augment(match_right_[v])) {
                match_right_[v] = u;
                return true;
            }
        }
        return false;
    }

    std::vector<std::vector<std::size_t>> adj_;
    std::vector<std::size_t> match_right_;
    std::vector<bool> seen_;
};

inline Time finite_bar_cost(const Bar& x, const Bar& y) {
    return std::max(std::abs(x.birth() - y.birth()), std::abs(x.death() - y.death()));
}

/// Bottleneck distance between barcodes of finite bars.
inline Time finite_bottleneck(const std::vector<Bar>& a, const std::vector<Bar>& b) {
    const std::size_t m = a.size(), k = b.size();
    std::vector<Time> candidates{0.0};
    for (const Bar& x : a) candidates.push_back(x.persistence() / 2);
    for (const Bar& y : b) candidates.push_back(y.persistence() / 2);
    for (const Bar& x : a)
        for (const Bar& y : b) candidates.push_back(finite_bar_cost(x, y));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // Left: bars of a, then diagonal copies of b. Right: bars of b, then
    // diagonal copies of a. Diagonal-to-diagonal edges are free.
    auto feasible = [&](Time delta) {
        std::vector<std::vector<std::size_t>> adj(m + k);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < k; ++j)
                if (finite_bar_cost(a[i], b[j]) <= delta) adj[i].push_back(j);
            if (a[i].persistence() / 2 <= delta) adj[i].push_back(k + i);
        }
        for (std::size_t j = 0; j < k; ++j) {
            if (b[j].persistence() / 2 <= delta) adj[m + j].push_back(j);
            for (std::size_t i = 0; i < m; ++i) adj[m + j].push_back(k + i);
        }
        return BipartiteMatcher(std::move(adj), k + m).max_matching() == m + k;
    };

    std::size_t lo = 0, hi = candidates.size() - 1;  // the largest candidate is always feasible
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (feasible(candidates[mid])) hi = mid;
        else lo = mid + 1;
    }
    return candidates[lo];
}

} // namespace detail

/// Bottleneck distance. Matched bars cost max(|birth diff|, |death diff|),
/// unmatched finite bars cost half their persistence. Infinite bars can only
/// match infinite bars (cost |birth diff|); a mismatch in their number gives
/// infinity.
inline Time bottleneck(const Barcode& a, const Barcode& b) {
    std::vector<Bar> fa, fb;
    std::vector<Time> ea, eb;
    for (const Bar& x : a) x.finite() ? fa.push_back(x) : ea.push_back(x.birth());
    for (const Bar& y : b) y.finite() ? fb.push_back(y) : eb.push_back(y.birth());
    if (ea.size() != eb.size()) return kInfinity;
    // Sorted order is an optimal bottleneck matching on the line.
    std::sort(ea.begin(), ea.end());
    std::sort(eb.begin(), eb.end());
    Time essential = 0;
    for (std::size_t i = 0; i < ea.size(); ++i) essential = std::max(essential, std::abs(ea[i] - eb[i]));
    return std::max(essential, detail::finite_bottleneck(fa, fb));
}

enum class Verdict { equal, dominated, violated };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::equal: return "equal";
    case Verdict::dominated: return "dominated";
    case Verdict::violated: return "violated";
    }
    return "?";
}

inline Verdict classify(const Barcode& predicted, const Barcode& actual) {
    if (predicted == actual) return Verdict::equal;
    return pointwise_dominated(actual, predicted) ? Verdict::dominated : Verdict::violated;
}

struct DimensionComparison {
    int n = 0;
    Barcode predicted;
    Barcode actual;
    Verdict verdict = Verdict::equal;
    bool asserted = false;  // n <= 2 has an expected verdict
    bool passed = true;     // expectation met (always true when not asserted)
    Time bottleneck = 0;
    Time diameter_bound = 0;
    bool bound_holds = true;
};

struct ComparisonReport {
    std::uint32_t characteristic = 2;
    Time diameter_x = 0;
    Time diameter_y = 0;
    Time diameter_bound = 0;
    std::vector<DimensionComparison> dims;

    bool verdicts_ok() const {
        return std::all_of(dims.begin(), dims.end(), [](const auto& d) { return d.passed; });
    }
    bool bound_ok() const {
        return std::all_of(dims.begin(), dims.end(), [](const auto& d) { return d.bound_holds; });
    }
    bool ok() const { return verdicts_ok() && bound_ok(); }
};

/// Barcodes of X, Y, and X x Y (sum metric) in dimensions 0..maxn.
struct ProductBarcodes {
    GradedBarcode x, y, product;
};

inline ProductBarcodes product_barcodes(const MetricSpace& x, const MetricSpace& y, int maxn, std::uint64_t p,
                                        const Options& opt = {}) {
    if (maxn < 0) throw InputError("maxn must be >= 0");
    if (maxn > kDefaultMaxHomologyDim)
        throw CapError("homological dimension", static_cast<unsigned long long>(maxn), kDefaultMaxHomologyDim);
    (void)PrimeField(p);
    const MetricSpace xy = product_sum(x, y, opt.limits);
    const MetricSpace* spaces[3] = {&x, &y, &xy};
    GradedBarcode out[3];
    // Each reduction is independent; results land in fixed slots.
    detail::parallel_for(3, opt.threads, [&](std::size_t i) {
        out[i] = reduce(vietoris_rips(*spaces[i], maxn + 1, opt), p);
    });
    return {std::move(out[0]), std::move(out[1]), std::move(out[2])};
}

inline ComparisonReport compare_barcodes(const ProductBarcodes& pb, int maxn, Time diam_x, Time diam_y,
                                         std::uint32_t characteristic) {
    ComparisonReport r;
    r.characteristic = characteristic;
    r.diameter_x = diam_x;
    r.diameter_y = diam_y;
    r.diameter_bound = std::min(diam_x, diam_y);
    for (int n = 0; n <= maxn; ++n) {
        DimensionComparison d;
        d.n = n;
        d.predicted = kunneth_predict(pb.x, pb.y, n);
        if (!pb.product.has(n)) throw InputError("product barcode is missing dimension " + std::to_string(n));
        d.actual = pb.product[n];
        d.verdict = classify(d.predicted, d.actual);
        d.asserted = n <= 2;
        if (n <= 1) d.passed = d.verdict == Verdict::equal;
        else if (n == 2) d.passed = d.verdict != Verdict::violated;
        d.bottleneck = bottleneck(d.predicted, d.actual);
        d.diameter_bound = r.diameter_bound;
        d.bound_holds = d.bottleneck <= d.diameter_bound;
        r.dims.push_back(std::move(d));
    }
    return r;
}

/// Runs the prediction against the true product barcode in dimensions 0..maxn.
/// Expectations: equal for n = 0, 1; dominated (or equal) for n = 2; higher
/// dimensions are recorded only. Bottleneck distances are filled in as well.
inline ComparisonReport compare_product(const MetricSpace& x, const MetricSpace& y, int maxn, std::uint64_t p = 2,
                                        const Options& opt = {}) {
    const ProductBarcodes pb = product_barcodes(x, y, maxn, p, opt);
    return compare_barcodes(pb, maxn, diameter(x), diameter(y), PrimeField(p).characteristic());
}

struct BoundCheck {
    int n = 0;
    Time bottleneck = 0;
    Time bound = 0;
    bool holds = true;
};

struct InterleavingReport {
    std::vector<BoundCheck> dims;
    bool holds() const {
        return std::all_of(dims.begin(), dims.end(), [](const BoundCheck& b) { return b.holds; });
    }
};

inline InterleavingReport check_interleaving_bound(const ComparisonReport& report) {
    InterleavingReport out;
    for (const auto& d : report.dims) out.dims.push_back({d.n, d.bottleneck, d.diameter_bound, d.bound_holds});
    return out;
}

inline InterleavingReport check_interleaving_bound(const MetricSpace& x, const MetricSpace& y, int maxn,
                                                   std::uint64_t p = 2, const Options& opt = {}) {
    return check_interleaving_bound(compare_product(x, y, maxn, p, opt));
}

} // namespace kph
