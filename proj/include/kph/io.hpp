#pragma once

// Text formats: distance-matrix CSV, barcode JSON, comparison-report JSON.
//
// Barcode JSON:
//   {"field": 2, "convention": "half-open",
//    "dims": {"0": [[0.0, 1.0], [0.0, "inf"]], "1": [[1.0, 2.0]]}}
// Bars are listed in canonical (birth, death) order, multiplicity by repetition.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "kph/bars.hpp"
#include "kph/config.hpp"
#include "kph/errors.hpp"
#include "kph/kunneth.hpp"
#include "kph/metric.hpp"
#include "kph/persistence.hpp"

namespace kph {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kConvention = "half-open";

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

inline bool parse_double(std::string_view s, double& out) {
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path);
    out << text;
    if (!out) throw InputError("failed writing file: " + path);
}

} // namespace detail

/// Parses n rows of n comma-separated decimals. A first row that does not
/// parse as numbers is taken as point labels.
inline MetricSpace parse_metric_csv(std::string_view text, const Limits& limits = {}) {
    std::vector<std::string_view> lines;
    for (auto& l : detail::split(text, '\n')) lines.push_back(l);
    while (!lines.empty() && lines.back().empty()) lines.pop_back();

    std::vector<std::string> labels;
    std::vector<std::vector<Time>> rows;
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const auto fields = detail::split(lines[li], ',');
        std::vector<Time> row;
        row.reserve(fields.size());
        bool numeric = true;
        for (std::size_t c = 0; c < fields.size(); ++c) {
            double v = 0;
            if (!detail::parse_double(fields[c], v)) {
                if (li == 0) {
                    numeric = false;
                    break;
                }
                throw InputError("line " + std::to_string(li + 1) + ", column " + std::to_string(c + 1) +
                                 ": not a number: '" + std::string(fields[c]) + "'");
            }
            row.push_back(v);
        }
        if (!numeric) {
            for (auto f : fields) labels.emplace_back(f);
            continue;
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InputError("distance matrix is empty");
    if (rows.size() > limits.max_points) throw CapError("point count", rows.size(), limits.max_points);
    const std::size_t header = labels.empty() ? 0 : 1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size())
            throw InputError("line " + std::to_string(i + 1 + header) + ": expected " + std::to_string(rows.size()) +
                             " values, got " + std::to_string(rows[i].size()));
    }
    if (!labels.empty() && labels.size() != rows.size())
        throw InputError("header has " + std::to_string(labels.size()) + " labels for " +
                         std::to_string(rows.size()) + " points");
    return MetricSpace::validate(rows, std::move(labels));
}

inline MetricSpace read_metric_csv(const std::string& path, const Limits& limits = {}) {
    return parse_metric_csv(detail::read_file(path), limits);
}

inline std::string format_time(Time t) {
    if (t == kInfinity) return "inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, t);
    return std::string(buf, ptr);
}

inline std::string metric_to_csv(const MetricSpace& m, bool with_labels = false) {
    std::string out;
    if (with_labels) {
        for (std::size_t j = 0; j < m.size(); ++j) out += (j ? "," : "") + m.labels()[j];
        out += '\n';
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) out += (j ? "," : "") + format_time(m(i, j));
        out += '\n';
    }
    return out;
}

namespace detail {

inline bool is_flat_array(const Json& v) {
    if (!v.is_array()) return false;
    return std::all_of(v.begin(), v.end(), [](const Json& e) { return !e.is_structured(); });
}

inline void pretty(const Json& v, std::string& out, int depth) {
    const std::string pad(static_cast<std::size_t>(depth + 1) * 2, ' ');
    const std::string close(static_cast<std::size_t>(depth) * 2, ' ');
    // Arrays of scalars and arrays of bars stay on one line.
    const bool inline_array =
        v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& e) { return !e.is_structured() || is_flat_array(e); });
    if (v.is_object() && !v.empty()) {
        out += "{\n";
        std::size_t i = 0;
        for (const auto& [key, val] : v.items()) {
            out += pad + Json(key).dump() + ": ";
            pretty(val, out, depth + 1);
            out += ++i < v.size() ? ",\n" : "\n";
        }
        out += close + "}";
    } else if (v.is_array() && !v.empty() && !inline_array) {
        out += "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            out += pad;
            pretty(v[i], out, depth + 1);
            out += i + 1 < v.size() ? ",\n" : "\n";
        }
        out += close + "]";
    } else if (v.is_array()) {
        out += "[";
        for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].dump(-1, ' ', false);
        out += "]";
    } else {
        out += v.dump();
    }
}

} // namespace detail

/// Deterministic indented JSON with each bar on a single line.
inline std::string to_pretty_json(const Json& v) {
    std::string out;
    detail::pretty(v, out, 0);
    return out + "\n";
}

inline Json bar_to_json(const Bar& b) {
    Json death = b.finite() ? Json(b.death()) : Json("inf");
    return Json::array({b.birth(), std::move(death)});
}

inline Json barcode_to_json(const Barcode& bc) {
    Json arr = Json::array();
    for (const Bar& b : bc) arr.push_back(bar_to_json(b));
    return arr;
}

inline Json graded_barcode_to_json(const GradedBarcode& gb, std::uint32_t characteristic) {
    Json dims = Json::object();
    for (const auto& [n, bc] : gb.by_dim()) dims[std::to_string(n)] = barcode_to_json(bc);
    Json doc = Json::object();
    doc["field"] = characteristic;
    doc["convention"] = kConvention;
    doc["dims"] = std::move(dims);
    return doc;
}

struct BarcodeDocument {
    std::uint32_t characteristic = 2;
    GradedBarcode barcode;
};

namespace detail {

inline Time json_time(const Json& v, bool allow_inf, const std::string& where) {
    if (v.is_number()) return v.get<double>();
    if (allow_inf && v.is_string() && v.get<std::string>() == "inf") return kInfinity;
    throw InputError(where + ": expected a number" + (allow_inf ? " or \"inf\"" : ""));
}

} // namespace detail

inline Barcode barcode_from_json(const Json& arr, const std::string& where) {
    if (!arr.is_array()) throw InputError(where + ": expected an array of bars");
    std::vector<Bar> bars;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string at = where + "[" + std::to_string(i) + "]";
        const Json& b = arr[i];
        if (!b.is_array() || b.size() != 2) throw InputError(at + ": a bar is a [birth, death] pair");
        const Time birth = detail::json_time(b[0], false, at);
        const Time death = detail::json_time(b[1], true, at);
        if (!(birth >= 0.0) || !std::isfinite(birth)) throw InputError(at + ": negative or non-finite birth");
        if (!(birth < death)) throw InputError(at + ": inverted or empty interval");
        bars.emplace_back(birth, death);
    }
    return Barcode(std::move(bars));
}

inline BarcodeDocument parse_barcode_json(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InputError("barcode document must be a JSON object");
    BarcodeDocument out;
    if (doc.contains("convention")) {
        if (!doc["convention"].is_string() || doc["convention"].get<std::string>() != kConvention)
            throw InputError("unknown bar convention: " + doc["convention"].dump());
    }
    if (doc.contains("field")) {
        const Json& f = doc["field"];
        if (!f.is_number_unsigned() || !is_prime(f.get<std::uint64_t>()) || f.get<std::uint64_t>() >= (1ULL << 31))
            throw InputError("field must be a prime below 2^31: " + f.dump());
        out.characteristic = f.get<std::uint32_t>();
    }
    if (!doc.contains("dims") || !doc["dims"].is_object()) throw InputError("missing \"dims\" object");
    for (const auto& [key, arr] : doc["dims"].items()) {
        int n = -1;
        const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), n);
        if (ec != std::errc{} || ptr != key.data() + key.size() || n < 0)
            throw InputError("dimension key is not a nonnegative integer: \"" + key + "\"");
        if (out.barcode.has(n)) throw InputError("duplicate dimension " + key);
        out.barcode.set(n, barcode_from_json(arr, "dims." + key));
    }
    return out;
}

inline std::string barcode_json_string(const GradedBarcode& gb, std::uint32_t characteristic) {
    return to_pretty_json(graded_barcode_to_json(gb, characteristic));
}

inline void write_barcode_json(const GradedBarcode& gb, std::uint32_t characteristic, const std::string& path) {
    detail::write_file(path, barcode_json_string(gb, characteristic));
}

inline BarcodeDocument read_barcode_json(const std::string& path) {
    return parse_barcode_json(detail::read_file(path));
}

inline Json time_to_json(Time t) {
    return t == kInfinity ? Json("inf") : Json(t);
}

inline Json report_to_json(const ComparisonReport& r) {
    Json doc = Json::object();
    doc["field"] = r.characteristic;
    doc["convention"] = kConvention;
    doc["diameter_x"] = r.diameter_x;
    doc["diameter_y"] = r.diameter_y;
    doc["diameter_bound"] = r.diameter_bound;
    Json dims = Json::array();
    for (const auto& d : r.dims) {
        Json e = Json::object();
        e["n"] = d.n;
        e["predicted"] = barcode_to_json(d.predicted);
        e["actual"] = barcode_to_json(d.actual);
        e["verdict"] = to_string(d.verdict);
        e["asserted"] = d.asserted;
        e["passed"] = d.passed;
        e["bottleneck"] = time_to_json(d.bottleneck);
        e["diameter_bound"] = d.diameter_bound;
        e["bound_holds"] = d.bound_holds;
        dims.push_back(std::move(e));
    }
    doc["dims"] = std::move(dims);
    doc["ok"] = r.ok();
    return doc;
}

inline std::string barcode_text(const Barcode& bc) {
    if (bc.empty()) return "{}";
    std::string out = "{";
    for (std::size_t i = 0; i < bc.size(); ++i) {
        const Bar& b = bc.bars()[i];
        out += (i ? " [" : "[") + format_time(b.birth()) + "," + format_time(b.death()) + ")";
    }
    return out + "}";
}

/// Aligned text rendering of a comparison report.
inline std::string report_table(const ComparisonReport& r) {
    std::ostringstream os;
    os << "field F_" << r.characteristic << ", diam X = " << format_time(r.diameter_x)
       << ", diam Y = " << format_time(r.diameter_y) << '\n';
    os << std::left << std::setw(4) << "n" << std::setw(11) << "verdict" << std::setw(10) << "expected"
       << std::setw(10) << "#pred" << std::setw(10) << "#actual" << "bottleneck <= bound\n";
    for (const auto& d : r.dims) {
        const char* expected = d.n <= 1 ? "equal" : d.n == 2 ? "dominated" : "-";
        os << std::setw(4) << d.n << std::setw(11) << to_string(d.verdict) << std::setw(10) << expected
           << std::setw(10) << d.predicted.size() << std::setw(10) << d.actual.size()
           << format_time(d.bottleneck) << " <= " << format_time(d.diameter_bound)
           << (d.bound_holds ? "  ok" : "  FAIL") << (d.passed ? "" : "  [verdict FAIL]") << '\n';
    }
    for (const auto& d : r.dims) {
        os << "PH_" << d.n << " predicted " << barcode_text(d.predicted) << '\n';
        os << "PH_" << d.n << " actual    " << barcode_text(d.actual) << '\n';
    }
    os << (r.ok() ? "all checks passed" : "CHECK FAILED") << '\n';
    return os.str();
}

} // namespace kph
