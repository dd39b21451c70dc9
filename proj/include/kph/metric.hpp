#pragma once

// Finite generalized metric spaces: a symmetric, nonnegative pairing on a
// finite point set. Neither the triangle inequality nor a zero diagonal is
// required.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kph/bars.hpp"
#include "kph/config.hpp"
#include "kph/errors.hpp"

namespace kph {

class MetricSpace {
public:
    /// Validates a square, symmetric, nonnegative, finite matrix. Labels
    /// default to "0", "1", ...
    static MetricSpace validate(const std::vector<std::vector<Time>>& rows,
                                std::vector<std::string> labels = {}) {
        const std::size_t n = rows.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (rows[i].size() != n) {
                throw InputError("distance matrix is not square: row " + std::to_string(i) + " has " +
                                 std::to_string(rows[i].size()) + " entries, expected " +
                                 std::to_string(n));
            }
        }
        std::vector<Time> flat;
        flat.reserve(n * n);
        for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
        return MetricSpace(n, std::move(flat), std::move(labels));
    }

    /// Row-major n*n storage.
    MetricSpace(std::size_t n, std::vector<Time> dist, std::vector<std::string> labels = {})
        : n_(n), dist_(std::move(dist)), labels_(std::move(labels)) {
        if (dist_.size() != n_ * n_) throw InputError("distance storage does not match point count");
        if (labels_.empty()) {
            labels_.reserve(n_);
            for (std::size_t i = 0; i < n_; ++i) labels_.push_back(std::to_string(i));
        } else if (labels_.size() != n_) {
            throw InputError("expected " + std::to_string(n_) + " labels, got " +
                             std::to_string(labels_.size()));
        }
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                const Time d = dist_[i * n_ + j];
                if (!std::isfinite(d)) throw ValidationError("non-finite distance", i, j);
                if (d < 0.0) throw ValidationError("negative distance", i, j);
                if (j > i && d != dist_[j * n_ + i]) throw ValidationError("asymmetric distance", i, j);
            }
        }
    }

    std::size_t size() const noexcept { return n_; }
    bool empty() const noexcept { return n_ == 0; }
    Time operator()(std::size_t i, std::size_t j) const noexcept { return dist_[i * n_ + j]; }
    std::span<const Time> row(std::size_t i) const { return {dist_.data() + i * n_, n_}; }
    const std::vector<Time>& matrix() const noexcept { return dist_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    /// Matrix equality; labels are ignored.
    bool same_distances(const MetricSpace& other) const {
        return n_ == other.n_ && dist_ == other.dist_;
    }

private:
    std::size_t n_ = 0;
    std::vector<Time> dist_;
    std::vector<std::string> labels_;
};

/// The two-point space I with d(0, 1) = 1.
inline MetricSpace unit_interval() {
    return MetricSpace(2, {0, 1, 1, 0});
}

inline MetricSpace one_point(Time self_distance = 0) {
    return MetricSpace(1, {self_distance});
}

/// Cartesian product with the sum metric; points in x-major order, so (x, y)
/// has index x * |Y| + y.
inline MetricSpace product_sum(const MetricSpace& x, const MetricSpace& y, const Limits& limits = {}) {
    const std::size_t nx = x.size(), ny = y.size();
    const unsigned long long count = static_cast<unsigned long long>(nx) * ny;
    if (count > limits.max_points) throw CapError("product point count", count, limits.max_points);
    const std::size_t n = nx * ny;
    std::vector<Time> dist(n * n);
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t a = 0; a < nx; ++a)
        for (std::size_t b = 0; b < ny; ++b) labels.push_back("(" + x.labels()[a] + "," + y.labels()[b] + ")");
    for (std::size_t a = 0; a < nx; ++a)
        for (std::size_t b = 0; b < ny; ++b)
            for (std::size_t c = 0; c < nx; ++c)
                for (std::size_t d = 0; d < ny; ++d)
                    dist[(a * ny + b) * n + (c * ny + d)] = x(a, c) + y(b, d);
    return MetricSpace(n, std::move(dist), std::move(labels));
}

/// Hamming cube {0,1}^k. Point i is the bit string of i, most significant
/// coordinate first, so the points are in lexicographic order.
inline MetricSpace hamming_cube(int k, const Limits& limits = {}) {
    if (k < 1) throw InputError("hamming cube dimension must be >= 1, got " + std::to_string(k));
    if (k >= 63 || (1ULL << k) > limits.max_points)
        throw CapError("hamming cube point count 2^" + std::to_string(k),
                       k >= 63 ? ~0ULL : (1ULL << k), limits.max_points);
    const std::size_t n = std::size_t{1} << k;
    std::vector<Time> dist(n * n);
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::string bits(static_cast<std::size_t>(k), '0');
        for (int c = 0; c < k; ++c)
            if (i >> (k - 1 - c) & 1U) bits[static_cast<std::size_t>(c)] = '1';
        labels.push_back(std::move(bits));
        for (std::size_t j = 0; j < n; ++j)
            dist[i * n + j] = static_cast<Time>(std::popcount(static_cast<std::uint64_t>(i ^ j)));
    }
    return MetricSpace(n, std::move(dist), std::move(labels));
}

/// Maximum over all ordered pairs, diagonal included.
inline Time diameter(const MetricSpace& x) {
    if (x.empty()) throw InputError("diameter of an empty space");
    return *std::max_element(x.matrix().begin(), x.matrix().end());
}

} // namespace kph
