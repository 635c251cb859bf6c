// phflow: Vietoris-Rips barcodes, explicit reductions and 1-Wasserstein distances.
//
// Exit status: 0 ok, 1 usage, 2 input error, 3 capacity error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "phflow/common.hpp"
#include "phflow/diagram.hpp"
#include "phflow/metric_io.hpp"
#include "phflow/reduction_core.hpp"
#include "phflow/vr_engine.hpp"
#include "phflow/wasserstein.hpp"

using namespace phflow;

namespace {

constexpr int kDigits = 9;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BarcodeArgs {
    std::string input;
    std::uint32_t dim = 1;
    std::optional<double> threshold;
    std::string format = "lower-distance";
    std::string mode = "oblivious";
    bool include_zero = false;
    std::string out;
    unsigned threads = 1;
};

struct WassersteinArgs {
    std::string a, b;
    double s = 40;
    bool exact = false;
    std::uint64_t seed = kDefaultSeed;
    bool report = false;
    unsigned threads = 1;
};

struct ReduceArgs {
    std::string input;
    std::string algorithm = "standard";
    bool anti = false;
};

// Bad enumerated flag values are usage errors, not input errors.
template <class Fn>
auto flag_value(Fn&& fn) {
    try {
        return fn();
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
}

int run_barcode(const BarcodeArgs& a) {
    MetricFormat fmt = flag_value([&] { return parse_metric_format(a.format); });
    if (fmt == MetricFormat::Sparse && !a.threshold) throw UsageError("--format sparse requires --threshold");
    ReductionMode mode;
    if (a.mode == "oblivious") mode = ReductionMode::Oblivious;
    else if (a.mode == "vmatrix") mode = ReductionMode::ReductionMatrix;
    else throw UsageError("unknown --mode '" + a.mode + "'");

    DistanceInput d = load_metric_file(a.input, fmt);
    VrOptions opt;
    opt.maxdim = a.dim;
    opt.threshold = a.threshold;
    opt.mode = mode;
    opt.include_zero = a.include_zero;
    opt.workers = std::max(1u, a.threads);
    VrResult r = vr_barcode(d, opt);

    std::string stem = a.out.empty() ? (std::filesystem::path(a.input).parent_path() /
                                        std::filesystem::path(a.input).stem()).string()
                                     : a.out;
    std::cout << "points " << d.size() << "\n";
    std::cout << "threshold " << format_sig(r.threshold, kDigits) << "\n";
    for (std::uint32_t p = 0; p < r.diagrams.size(); ++p) {
        const auto& dg = r.diagrams[p];
        const auto& st = r.stats[p];
        std::string path = stem + ".dim" + std::to_string(p) + ".txt";
        save_diagram(path, dg, kDigits);
        std::cout << "dim " << p << ": finite " << dg.finite.size() << ", infinite " << dg.infinite.size();
        if (p > 0)
            std::cout << ", columns " << st.columns << ", apparent " << st.apparent << ", shortcut " << st.shortcut
                      << ", emergent " << st.emergent << ", reduced " << st.reduced << ", additions " << st.additions;
        std::cout << " -> " << path << "\n";
    }
    return 0;
}

int run_wasserstein(const WassersteinArgs& a) {
    PersistenceDiagram da = load_diagram(a.a), db = load_diagram(a.b);
    if (da.infinite.size() != db.infinite.size())
        std::cerr << "warning: essential class counts differ (" << da.infinite.size() << " vs " << db.infinite.size()
                  << "); only finite points are compared\n";
    nlohmann::ordered_json rep;
    double value;
    if (a.exact) {
        value = exact_w1(da, db);
        auto net = build_transshipment_network(zero_condense(da, db));
        rep = {{"value", value}, {"exact", true}, {"nodes", net.nodes.size()}, {"arcs", net.arcs.size()}};
    } else {
        if (!(a.s > 2)) throw UsageError("--s must exceed 2");
        ApproxReport r = approx_w1_report(da, db, a.s, a.seed, std::max(1u, a.threads));
        value = r.value;
        rep = {{"value", r.value},
               {"exact", false},
               {"s", a.s},
               {"seed", a.seed},
               {"delta", r.delta},
               {"epsilon", r.epsilon},
               {"rwmd", r.lower_bound},
               {"error_bound", theoretical_error_bound(a.s)},
               {"nodes", r.nodes},
               {"arcs", r.arcs},
               {"pivots", r.pivots},
               {"optimal", r.optimal}};
    }
    std::cout << format_sig(value, kDigits) << "\n";
    if (a.report) std::cout << rep.dump() << "\n";
    return 0;
}

int run_reduce(const ReduceArgs& a) {
    ReduceAlgorithm alg = flag_value([&] { return parse_reduce_algorithm(a.algorithm); });
    BoundaryMatrix m = load_boundary_matrix(a.input);
    for (auto [r, c] : reduce_pivots(m, alg, a.anti).pairs()) std::cout << r << " " << c << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vietoris-Rips persistence and Wasserstein distances"};
    app.require_subcommand(1);

    BarcodeArgs bc;
    auto* barcode = app.add_subcommand("barcode", "compute a Vietoris-Rips barcode");
    barcode->add_option("file", bc.input, "metric input file")->required();
    barcode->add_option("--dim", bc.dim, "largest homology dimension")->capture_default_str();
    barcode->add_option("--threshold", bc.threshold, "diameter threshold (default: enclosing radius)");
    barcode->add_option("--format", bc.format, "lower-distance | point-cloud | sparse")->capture_default_str();
    barcode->add_option("--mode", bc.mode, "oblivious | vmatrix")->capture_default_str();
    barcode->add_flag("--include-zero", bc.include_zero, "keep zero-persistence pairs");
    barcode->add_option("--out", bc.out, "output stem (default: input path without extension)");
    barcode->add_option("--threads", bc.threads, "worker threads")->capture_default_str();

    WassersteinArgs ws;
    auto* wass = app.add_subcommand("wasserstein", "1-Wasserstein distance between two diagram files");
    wass->add_option("A", ws.a, "first diagram")->required();
    wass->add_option("B", ws.b, "second diagram")->required();
    wass->add_option("--s", ws.s, "WSPD separation")->capture_default_str();
    wass->add_flag("--exact", ws.exact, "skip condensation and spanner");
    wass->add_option("--seed", ws.seed, "perturbation seed")->capture_default_str();
    wass->add_flag("--report", ws.report, "print a JSON report after the distance");
    wass->add_option("--threads", ws.threads, "worker threads")->capture_default_str();

    ReduceArgs rd;
    auto* reduce = app.add_subcommand("reduce", "reduce an explicit boundary matrix");
    reduce->add_option("file", rd.input, "boundary matrix file")->required();
    reduce->add_option("--algorithm", rd.algorithm, "standard | twist | compress")->capture_default_str();
    reduce->add_flag("--anti-transpose", rd.anti, "reduce the anti-transpose and map pivots back");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*barcode) return run_barcode(bc);
        if (*wass) return run_wasserstein(ws);
        if (*reduce) return run_reduce(rd);
    } catch (const UsageError& e) {
        std::cerr << "phflow: " << e.what() << "\n";
        return 1;
    } catch (const CapacityError& e) {
        std::cerr << "phflow: capacity error: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "phflow: input error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidArgument& e) {
        std::cerr << "phflow: invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "phflow: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
