#pragma once

// Persistent homology of Hamming cubes {0,1}^k, checked against the closed
// forms PH_0 = (0,1)^(2^k - 1) + (0,inf), PH_1 = (1,2)^(k 2^(k-1) - (2^k - 1)),
// and PH_2 = 0.

#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kph/bars.hpp"
#include "kph/complex.hpp"
#include "kph/io.hpp"
#include "kph/metric.hpp"
#include "kph/persistence.hpp"

namespace kph {

struct HammingColumn {
    int k = 0;
    int maxdim = 0;
    GradedBarcode barcode;           // dims 0..maxdim-1
    std::vector<std::size_t> counts; // bar counts, dims 0..maxdim-1
    std::optional<bool> ph0_matches; // unset when the dimension was not computed
    std::optional<bool> ph1_matches;
    std::optional<bool> ph2_vanishes;

    bool ok() const {
        return ph0_matches.value_or(true) && ph1_matches.value_or(true) && ph2_vanishes.value_or(true);
    }
};

inline std::uint64_t hamming_ph1_count(int k) {
    const std::uint64_t half = std::uint64_t{1} << (k - 1);
    return static_cast<std::uint64_t>(k) * half - (2 * half - 1);
}

inline Barcode hamming_ph0_expected(int k) {
    std::vector<Bar> bars((std::size_t{1} << k) - 1, Bar(0, 1));
    bars.emplace_back(0, kInfinity);
    return Barcode(std::move(bars));
}

inline Barcode hamming_ph1_expected(int k) {
    return Barcode(std::vector<Bar>(hamming_ph1_count(k), Bar(1, 2)));
}

inline HammingColumn hamming_column(int k, int maxdim, std::uint64_t p = 2, const Options& opt = {}) {
    if (maxdim < 1) throw InputError("maxdim must be >= 1");
    HammingColumn col;
    col.k = k;
    col.maxdim = maxdim;
    const GradedBarcode all = reduce(vietoris_rips(hamming_cube(k, opt.limits), maxdim, opt), p);
    for (int n = 0; n < maxdim; ++n) {
        col.barcode.set(n, all[n]);
        col.counts.push_back(all[n].size());
    }
    col.ph0_matches = col.barcode[0] == hamming_ph0_expected(k);
    if (maxdim > 1) col.ph1_matches = col.barcode[1] == hamming_ph1_expected(k);
    if (maxdim > 2) col.ph2_vanishes = col.barcode[2].empty();
    return col;
}

inline Json hamming_to_json(const std::vector<HammingColumn>& cols, std::uint32_t characteristic) {
    Json doc = Json::object();
    doc["field"] = characteristic;
    doc["convention"] = kConvention;
    Json arr = Json::array();
    bool ok = true;
    for (const auto& c : cols) {
        Json e = Json::object();
        e["k"] = c.k;
        e["maxdim"] = c.maxdim;
        e["counts"] = c.counts;
        Json expected = Json::object();
        expected["PH0"] = std::uint64_t{1} << c.k;
        if (c.maxdim > 1) expected["PH1"] = hamming_ph1_count(c.k);
        if (c.maxdim > 2) expected["PH2"] = 0;
        e["expected"] = std::move(expected);
        Json dims = Json::object();
        for (const auto& [n, bc] : c.barcode.by_dim()) dims[std::to_string(n)] = barcode_to_json(bc);
        e["dims"] = std::move(dims);
        e["ok"] = c.ok();
        ok = ok && c.ok();
        arr.push_back(std::move(e));
    }
    doc["columns"] = std::move(arr);
    doc["ok"] = ok;
    return doc;
}

/// Plain-text table: one row per PH_n, one column per k, then the closed-form checks.
inline std::string hamming_table(const std::vector<HammingColumn>& cols) {
    std::ostringstream os;
    os << "Number of bars in PH_n(I^k)\n";
    os << std::setw(8) << "";
    for (const auto& c : cols) os << std::setw(7) << ("k=" + std::to_string(c.k));
    os << '\n';
    int rows = 0;
    for (const auto& c : cols) rows = std::max(rows, c.maxdim);
    for (int n = 0; n < rows; ++n) {
        os << std::left << std::setw(8) << ("PH_" + std::to_string(n)) << std::right;
        for (const auto& c : cols)
            os << std::setw(7) << (n < c.maxdim ? std::to_string(c.counts[static_cast<std::size_t>(n)]) : "-");
        os << '\n';
    }
    auto verdict_row = [&](const char* name, auto member) {
        os << std::left << std::setw(8) << name << std::right;
        for (const auto& c : cols) {
            const std::optional<bool>& v = c.*member;
            os << std::setw(7) << (v ? (*v ? "ok" : "FAIL") : "-");
        }
        os << '\n';
    };
    os << "closed forms\n";
    verdict_row("PH_0", &HammingColumn::ph0_matches);
    verdict_row("PH_1", &HammingColumn::ph1_matches);
    verdict_row("PH_2=0", &HammingColumn::ph2_vanishes);
    return os.str();
}

} // namespace kph
