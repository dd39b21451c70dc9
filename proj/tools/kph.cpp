// kph: command-line front end.
//
//   kph vr --input X.csv --maxdim 2 [--field p] [--output out.json] [--dump-complex cells.txt]
//   kph kunneth --x X.csv --y Y.csv [--maxn 3] [--field p] [--format json|table]
//   kph hamming --k 1,2,3,4 [--maxdim 4] [--field p] [--table | --json]
//   kph bottleneck --a A.json --b B.json [--dim n]
//
// Exit codes: 0 success, 1 a check failed, 2 input error, 3 resource cap.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kph/complex.hpp"
#include "kph/config.hpp"
#include "kph/errors.hpp"
#include "kph/hamming.hpp"
#include "kph/io.hpp"
#include "kph/kunneth.hpp"
#include "kph/persistence.hpp"

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;

struct Common {
    std::uint64_t field = 2;
    unsigned threads = kph::hardware_threads();
    std::uint64_t cell_cap = kph::Limits{}.cell_cap;
    std::size_t max_points = kph::Limits{}.max_points;
    std::string output;

    kph::Options options() const {
        kph::Options o;
        o.threads = threads;
        o.limits.cell_cap = cell_cap;
        o.limits.max_points = max_points;
        return o;
    }
};

void add_common(CLI::App* cmd, Common& c, bool with_field = true) {
    if (with_field) cmd->add_option("--field", c.field, "Prime field characteristic")->capture_default_str();
    cmd->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--cell-cap", c.cell_cap, "Maximum number of cells in any complex")->capture_default_str();
    cmd->add_option("--max-points", c.max_points, "Maximum number of points in any space")->capture_default_str();
    cmd->add_option("--output,-o", c.output, "Write to this file instead of stdout");
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw kph::InputError("cannot write file: " + path);
        out << text;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Persistent homology of sum-metric products and the Kunneth prediction"};
    app.require_subcommand(1);

    Common common;

    // vr
    auto* vr = app.add_subcommand("vr", "Vietoris-Rips barcode of a distance matrix");
    std::string vr_input, vr_dump;
    int vr_maxdim = 2;
    vr->add_option("--input,-i", vr_input, "Distance-matrix CSV")->required();
    vr->add_option("--maxdim", vr_maxdim, "Build dimension; barcodes are reported below it")
        ->check(CLI::Range(1, 64))->capture_default_str();
    vr->add_option("--dump-complex", vr_dump, "Write the filtered complex, one cell per line");
    add_common(vr, common);

    // kunneth
    auto* kn = app.add_subcommand("kunneth", "Compare the Kunneth prediction against the product barcode");
    std::string kn_x, kn_y, kn_format = "json";
    int kn_maxn = 3;
    kn->add_option("--x", kn_x, "Distance-matrix CSV of X")->required();
    kn->add_option("--y", kn_y, "Distance-matrix CSV of Y")->required();
    kn->add_option("--maxn", kn_maxn, "Highest homological dimension compared")
        ->check(CLI::Range(0, kph::kDefaultMaxHomologyDim))->capture_default_str();
    kn->add_option("--format", kn_format, "Output format")
        ->check(CLI::IsMember({"json", "table"}))->capture_default_str();
    add_common(kn, common);

    // hamming
    auto* hm = app.add_subcommand("hamming", "Bar counts of Hamming cubes");
    std::vector<int> hm_k;
    int hm_maxdim = 3;
    bool hm_table = false, hm_json = false;
    hm->add_option("--k", hm_k, "Cube dimensions, e.g. --k 1,2,3")->required()->delimiter(',')
        ->check(CLI::PositiveNumber);
    hm->add_option("--maxdim", hm_maxdim, "Build dimension; PH_0..PH_{maxdim-1} are reported")
        ->check(CLI::Range(1, 64))->capture_default_str();
    auto* table_flag = hm->add_flag("--table", hm_table, "Aligned text table (default)");
    hm->add_flag("--json", hm_json, "JSON output")->excludes(table_flag);
    add_common(hm, common);

    // bottleneck
    auto* bn = app.add_subcommand("bottleneck", "Bottleneck distance between two barcode documents");
    std::string bn_a, bn_b;
    int bn_dim = 0;
    bn->add_option("--a", bn_a, "Barcode JSON")->required();
    bn->add_option("--b", bn_b, "Barcode JSON")->required();
    bn->add_option("--dim", bn_dim, "Homological dimension to compare")->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    add_common(bn, common, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        const kph::Options opt = common.options();

        if (*vr) {
            const kph::MetricSpace x = kph::read_metric_csv(vr_input, opt.limits);
            const kph::FilteredComplex c = kph::vietoris_rips(x, vr_maxdim, opt);
            if (!vr_dump.empty()) {
                std::ofstream out(vr_dump, std::ios::binary);
                if (!out) throw kph::InputError("cannot write file: " + vr_dump);
                c.dump(out);
            }
            const kph::GradedBarcode all = kph::reduce(c, common.field);
            kph::GradedBarcode reported;
            for (int n = 0; n < vr_maxdim; ++n) reported.set(n, all[n]);
            emit(kph::barcode_json_string(reported, kph::PrimeField(common.field).characteristic()), common.output);
            return 0;
        }

        if (*kn) {
            const kph::MetricSpace x = kph::read_metric_csv(kn_x, opt.limits);
            const kph::MetricSpace y = kph::read_metric_csv(kn_y, opt.limits);
            const kph::ComparisonReport report = kph::compare_product(x, y, kn_maxn, common.field, opt);
            emit(kn_format == "table" ? kph::report_table(report) : kph::to_pretty_json(kph::report_to_json(report)),
                 common.output);
            if (!report.ok()) {
                for (const auto& d : report.dims) {
                    if (!d.passed)
                        std::cerr << "check failed in dimension " << d.n << ": verdict "
                                  << kph::to_string(d.verdict) << '\n';
                    if (!d.bound_holds)
                        std::cerr << "interleaving bound failed in dimension " << d.n << '\n';
                }
                return kExitCheckFailed;
            }
            return 0;
        }

        if (*hm) {
            std::vector<kph::HammingColumn> cols;
            for (int k : hm_k) cols.push_back(kph::hamming_column(k, hm_maxdim, common.field, opt));
            const auto characteristic = kph::PrimeField(common.field).characteristic();
            emit(hm_json ? kph::to_pretty_json(kph::hamming_to_json(cols, characteristic)) : kph::hamming_table(cols),
                 common.output);
            for (const auto& c : cols) {
                if (!c.ok()) {
                    std::cerr << "closed-form check failed for k = " << c.k << '\n';
                    return kExitCheckFailed;
                }
            }
            return 0;
        }

        if (*bn) {
            const kph::BarcodeDocument a = kph::read_barcode_json(bn_a);
            const kph::BarcodeDocument b = kph::read_barcode_json(bn_b);
            if (!a.barcode.has(bn_dim)) throw kph::InputError("dimension " + std::to_string(bn_dim) + " missing from " + bn_a);
            if (!b.barcode.has(bn_dim)) throw kph::InputError("dimension " + std::to_string(bn_dim) + " missing from " + bn_b);
            emit(kph::format_time(kph::bottleneck(a.barcode[bn_dim], b.barcode[bn_dim])) + "\n", common.output);
            return 0;
        }
    } catch (const kph::CapError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCap;
    } catch (const kph::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const kph::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return 0;
}
