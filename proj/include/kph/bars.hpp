#pragma once

// Bars and barcodes of R+-graded modules over the polynomial ring k[R+].
//
// A bar (a, b) stands for the cyclic module shifted to degree a and killed by
// T^(b-a). It is nonzero exactly in the degrees a <= t < b, so every bar is a
// half-open interval [birth, death). Deaths may be +infinity (free summands).

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kph {

/// Filtration value. Exact binary64; +infinity is the only non-finite value admitted.
using Time = double;

inline constexpr Time kInfinity = std::numeric_limits<Time>::infinity();

class Bar {
public:
    /// Throws std::invalid_argument unless 0 <= birth < death and birth is finite.
    Bar(Time birth, Time death) : birth_(birth), death_(death) {
        if (!(birth >= 0.0) || !std::isfinite(birth) || !(birth < death) || std::isnan(death)) {
            throw std::invalid_argument("invalid bar [" + std::to_string(birth) + ", " +
                                        std::to_string(death) + ")");
        }
    }

    /// Builds a bar, or nothing when the interval is empty (birth >= death).
    static std::optional<Bar> make(Time birth, Time death) {
        if (!(birth < death)) return std::nullopt;
        return Bar(birth, death);
    }

    Time birth() const noexcept { return birth_; }
    Time death() const noexcept { return death_; }
    bool finite() const noexcept { return death_ != kInfinity; }
    Time persistence() const noexcept { return death_ - birth_; }

    /// True when t lies in [birth, death).
    bool alive_at(Time t) const noexcept { return birth_ <= t && t < death_; }

    friend auto operator<=>(const Bar&, const Bar&) = default;
    friend bool operator==(const Bar&, const Bar&) = default;

private:
    Time birth_;
    Time death_;
};

/// (a, b) tensor (c, d) = (a + c, min(a + d, b + c)).
inline Bar tensor(const Bar& x, const Bar& y) {
    return Bar(x.birth() + y.birth(),
               std::min(x.birth() + y.death(), x.death() + y.birth()));
}

/// Tor1((a, b), (c, d)) = (max(a + d, b + c), b + d); vanishes if either bar is free.
inline std::optional<Bar> tor1(const Bar& x, const Bar& y) {
    if (!x.finite() || !y.finite()) return std::nullopt;
    return Bar::make(std::max(x.birth() + y.death(), x.death() + y.birth()),
                     x.death() + y.death());
}

/// Multiset of bars in one homological dimension, always kept in canonical
/// (birth, death) order so that equality is multiset equality.
class Barcode {
public:
    Barcode() = default;
    Barcode(std::initializer_list<Bar> bars) : bars_(bars) { canonicalize(); }
    explicit Barcode(std::vector<Bar> bars) : bars_(std::move(bars)) { canonicalize(); }

    const std::vector<Bar>& bars() const noexcept { return bars_; }
    std::size_t size() const noexcept { return bars_.size(); }
    bool empty() const noexcept { return bars_.empty(); }
    auto begin() const noexcept { return bars_.begin(); }
    auto end() const noexcept { return bars_.end(); }

    void add(const Bar& bar) {
        bars_.insert(std::upper_bound(bars_.begin(), bars_.end(), bar), bar);
    }

    std::size_t count(const Bar& bar) const {
        auto [lo, hi] = std::equal_range(bars_.begin(), bars_.end(), bar);
        return static_cast<std::size_t>(hi - lo);
    }

    std::size_t infinite_count() const {
        return static_cast<std::size_t>(
            std::count_if(bars_.begin(), bars_.end(), [](const Bar& b) { return !b.finite(); }));
    }

    friend bool operator==(const Barcode&, const Barcode&) = default;

private:
    void canonicalize() { std::sort(bars_.begin(), bars_.end()); }

    std::vector<Bar> bars_;
};

/// Direct sum: multiset union.
inline Barcode direct_sum(const Barcode& a, const Barcode& b) {
    std::vector<Bar> out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return Barcode(std::move(out));
}

inline Barcode tensor(const Barcode& a, const Barcode& b) {
    std::vector<Bar> out;
    out.reserve(a.size() * b.size());
    for (const Bar& x : a)
        for (const Bar& y : b) out.push_back(tensor(x, y));
    return Barcode(std::move(out));
}

inline Barcode tor1(const Barcode& a, const Barcode& b) {
    std::vector<Bar> out;
    for (const Bar& x : a)
        for (const Bar& y : b)
            if (auto z = tor1(x, y)) out.push_back(*z);
    return Barcode(std::move(out));
}

/// Dimension of the degree-t part: number of bars with birth <= t < death.
inline std::size_t dim_at(const Barcode& a, Time t) {
    return static_cast<std::size_t>(
        std::count_if(a.begin(), a.end(), [t](const Bar& b) { return b.alive_at(t); }));
}

/// Degree shift by s >= 0.
inline Barcode shift(const Barcode& a, Time s) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw std::invalid_argument("shift must be finite and >= 0");
    std::vector<Bar> out;
    out.reserve(a.size());
    for (const Bar& b : a) out.emplace_back(b.birth() + s, b.death() + s);
    return Barcode(std::move(out));
}

/// Barcodes indexed by homological dimension. Dimensions that were computed
/// but carry no bars are stored as explicit empty barcodes.
class GradedBarcode {
public:
    GradedBarcode() = default;
    GradedBarcode(std::initializer_list<std::pair<const int, Barcode>> init) : by_dim_(init) {}

    /// Barcode in dimension n; empty if n was never set.
    const Barcode& operator[](int n) const {
        static const Barcode kEmpty;
        auto it = by_dim_.find(n);
        return it == by_dim_.end() ? kEmpty : it->second;
    }

    bool has(int n) const { return by_dim_.count(n) != 0; }
    void set(int n, Barcode b) {
        if (n < 0) throw std::invalid_argument("negative homological dimension");
        by_dim_[n] = std::move(b);
    }
    Barcode& at(int n) { return by_dim_[n]; }

    /// One past the largest stored dimension.
    int dim_bound() const { return by_dim_.empty() ? 0 : by_dim_.rbegin()->first + 1; }

    const std::map<int, Barcode>& by_dim() const noexcept { return by_dim_; }

    friend bool operator==(const GradedBarcode&, const GradedBarcode&) = default;

private:
    std::map<int, Barcode> by_dim_;
};

} // namespace kph
