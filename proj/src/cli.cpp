#include "rsrm/cli.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rsrm/dataset_io.hpp"
#include "rsrm/experiment.hpp"
#include "rsrm/fetch.hpp"
#include "rsrm/plot.hpp"
#include "rsrm/records.hpp"

namespace fs = std::filesystem;

namespace rsrm {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitCapped = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string resolve_spec_path(const std::string& dataset, const std::string& data_dir) {
    if (dataset.size() > 5 && dataset.ends_with(".json")) {
        if (!fs::exists(dataset))
            throw std::runtime_error("spec file '" + dataset + "' does not exist");
        return dataset;
    }
    const fs::path p = fs::path(data_dir) / "specs" / (dataset + ".json");
    if (!fs::exists(p))
        throw std::runtime_error("unknown dataset '" + dataset + "' (no spec at " + p.string() +
                                 ")");
    return p.string();
}

std::vector<int> parse_i_range(const std::string& text) {
    const auto parse_int = [](const std::string& tok) {
        int v = 0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size() || v < 0)
            throw UsageError("bad --i-range element '" + tok + "'");
        return v;
    };
    const std::size_t dots = text.find("..");
    if (dots != std::string::npos) {
        const int lo = parse_int(text.substr(0, dots));
        const int hi = parse_int(text.substr(dots + 2));
        if (hi < lo) throw UsageError("--i-range '" + text + "' is empty");
        std::vector<int> out;
        for (int i = lo; i <= hi; ++i) out.push_back(i);
        return out;
    }
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t pos = text.find(',', start);
        const std::string tok =
            pos == std::string::npos ? text.substr(start) : text.substr(start, pos - start);
        out.push_back(parse_int(tok));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (out.empty()) throw UsageError("--i-range is empty");
    return out;
}

std::vector<double> parse_d_set(const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t pos = text.find(',', start);
        const std::string tok =
            pos == std::string::npos ? text.substr(start) : text.substr(start, pos - start);
        double v = 0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size() || !(v > 0))
            throw UsageError("bad --d-set element '" + tok + "'");
        out.push_back(v);
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (out.empty()) throw UsageError("--d-set is empty");
    return out;
}

std::string millions(std::uint64_t count) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", static_cast<double>(count) / 1e6);
    return buf;
}

std::string sibling_path(const std::string& records_path, const std::string& suffix) {
    const fs::path p(records_path);
    fs::path out = p.parent_path() / p.stem();
    return out.string() + suffix;
}

RecordFormat pick_format(const std::string& format_flag, const std::string& out_path) {
    if (format_flag == "csv") return RecordFormat::Csv;
    if (format_flag == "jsonl") return RecordFormat::JsonLines;
    if (!format_flag.empty()) throw UsageError("unknown --format '" + format_flag + "'");
    return out_path.ends_with(".jsonl") ? RecordFormat::JsonLines : RecordFormat::Csv;
}

void print_record_line(const ExperimentRecord& rec) {
    std::printf("%-10s i=%d kClusters=%-4d L=%-3d D=%-4g kNeighbors=%-3d acc=%8.4f%% "
                "cost=%llu (%sM)%s\n",
                rec.dataset.c_str(), rec.config.i_exponent, rec.config.k_clusters,
                rec.config.l_clusters, rec.config.threshold_d, rec.config.k_neighbors,
                rec.accuracy_percent,
                static_cast<unsigned long long>(rec.distance_computations),
                millions(rec.distance_computations).c_str(),
                rec.convergence_capped ? " [iteration cap hit]" : "");
}

struct OutputOptions {
    std::string out_path;
    std::string format_flag;
    bool no_predictions = false;
};

int write_outputs(const Dataset& dataset, const std::vector<ExperimentRecord>& records,
                  const OutputOptions& opts, const std::string& default_stem) {
    std::string out = opts.out_path.empty() ? default_stem + ".csv" : opts.out_path;
    export_records(records, out, pick_format(opts.format_flag, out));
    std::cout << "wrote " << out << "\n";
    if (!opts.no_predictions) {
        const std::string pred = sibling_path(out, "-predictions.csv");
        export_predictions(dataset, records, pred);
        std::cout << "wrote " << pred << "\n";
    }
    bool capped = false;
    for (const ExperimentRecord& rec : records) capped = capped || rec.convergence_capped;
    if (capped)
        std::cerr << "warning: at least one clustering stopped at the iteration cap; "
                     "results were still written\n";
    return capped ? kExitCapped : kExitOk;
}

int cmd_fetch(const std::string& dataset, const std::string& data_dir) {
    const DatasetSpec spec = load_spec(resolve_spec_path(dataset, data_dir));
    fetch_dataset(spec, data_dir);
    return kExitOk;
}

int cmd_baseline(const std::string& dataset, const std::string& data_dir, int k_neighbors,
                 int sweep_max, const OutputOptions& opts) {
    if (k_neighbors <= 0 && sweep_max <= 0)
        throw UsageError("baseline needs --k N or --sweep KMAX");
    const DatasetSpec spec = load_spec(resolve_spec_path(dataset, data_dir));
    const Dataset data = load_dataset(spec, data_dir);

    int k = k_neighbors;
    if (sweep_max > 0) {
        const BestKResult sweep = find_best_k(data, sweep_max);
        std::printf("%-4s %s\n", "k", "accuracy%");
        for (std::size_t i = 0; i < sweep.accuracy_by_k.size(); ++i)
            std::printf("%-4zu %.4f%s\n", i + 1, sweep.accuracy_by_k[i],
                        static_cast<int>(i + 1) == sweep.best_k ? "  <- best" : "");
        std::printf("best k = %d (accuracy %.4f%%)\n", sweep.best_k, sweep.accuracy_percent);
        k = sweep.best_k;
    }

    const ExperimentRecord rec = run_conv_baseline(data, k);
    print_record_line(rec);
    return write_outputs(data, {rec}, opts, data.name + "-baseline");
}

int cmd_grid(const std::string& dataset, const std::string& data_dir, const std::string& i_range,
             const std::string& d_set, const std::string& k_neighbors, int max_iterations,
             const OutputOptions& opts) {
    const DatasetSpec spec = load_spec(resolve_spec_path(dataset, data_dir));
    const Dataset data = load_dataset(spec, data_dir);

    GridOptions grid;
    grid.i_range = parse_i_range(i_range);
    grid.d_set = parse_d_set(d_set);
    grid.max_iterations = max_iterations;
    if (k_neighbors == "auto") {
        const BestKResult sweep = find_best_k(data);
        grid.k_neighbors = sweep.best_k;
        std::printf("kNeighbors auto: best k = %d (baseline accuracy %.4f%%)\n", sweep.best_k,
                    sweep.accuracy_percent);
    } else {
        int v = 0;
        const auto res =
            std::from_chars(k_neighbors.data(), k_neighbors.data() + k_neighbors.size(), v);
        if (res.ec != std::errc{} || res.ptr != k_neighbors.data() + k_neighbors.size() || v < 1)
            throw UsageError("bad --k-neighbors '" + k_neighbors + "'");
        grid.k_neighbors = v;
    }

    const std::vector<ExperimentRecord> records = run_rsrm_grid(data, grid);
    for (const ExperimentRecord& rec : records) print_record_line(rec);
    return write_outputs(data, records, opts, data.name + "-grid");
}

int cmd_report(const std::string& records_path, const std::string& baseline_path,
               std::string out_path) {
    const std::vector<ExperimentRecord> records = parse_records(records_path);
    ExperimentRecord baseline;
    const ExperimentRecord* baseline_ptr = nullptr;
    if (!baseline_path.empty()) {
        const std::vector<ExperimentRecord> rows = parse_records(baseline_path);
        bool found = false;
        for (const ExperimentRecord& rec : rows) {
            if (rec.is_baseline()) {
                baseline = rec;
                found = true;
                break;
            }
        }
        if (!found)
            throw std::runtime_error("no full-scan record (kClusters = 0) in '" + baseline_path +
                                     "'");
        baseline_ptr = &baseline;
    }
    if (out_path.empty()) out_path = sibling_path(records_path, ".svg");
    emit_plot(records, baseline_ptr, out_path);
    std::cout << "wrote " << out_path << "\n";
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"k-NN benchmark with cluster-based reference set reduction"};
    app.require_subcommand(1);
    // Global options stay usable after the subcommand name.
    app.fallthrough();

    std::string data_dir = "data";
    app.add_option("--data-dir", data_dir, "dataset directory (default: data)")
        ->envname("RSRM_DATA_DIR");
    bool seedless = false;
    app.add_flag("--seedless", seedless,
                 "accepted for interface compatibility; every run is deterministic");

    auto* fetch = app.add_subcommand("fetch-data", "download a dataset's source files");
    std::string fetch_dataset_name;
    fetch->add_option("--dataset", fetch_dataset_name, "dataset name or spec path")->required();

    auto* baseline = app.add_subcommand("baseline", "full-scan classifier over a dataset");
    std::string base_dataset;
    int base_k = 0;
    int base_sweep = 0;
    OutputOptions base_out;
    baseline->add_option("--dataset", base_dataset, "dataset name or spec path")->required();
    baseline->add_option("--k", base_k, "neighbor count");
    baseline->add_option("--sweep", base_sweep,
                         "sweep k = 1..KMAX and keep the best (smallest wins ties)");
    baseline->add_option("--out", base_out.out_path, "records file (default: NAME-baseline.csv)");
    baseline->add_option("--format", base_out.format_flag, "csv or jsonl");
    baseline->add_flag("--no-predictions", base_out.no_predictions,
                       "skip the per-item predictions sidecar");

    auto* grid = app.add_subcommand("grid", "reduced-reference-set sweep over (i, D)");
    std::string grid_dataset;
    std::string grid_i = "1..8";
    std::string grid_d = "1,1.5,2";
    std::string grid_k = "auto";
    int grid_max_iter = 100;
    OutputOptions grid_out;
    grid->add_option("--dataset", grid_dataset, "dataset name or spec path")->required();
    grid->add_option("--i-range", grid_i, "exponents, e.g. 1..8 or 2,4,6 (default 1..8)");
    grid->add_option("--d-set", grid_d, "threshold multipliers (default 1,1.5,2)");
    grid->add_option("--k-neighbors", grid_k,
                     "neighbor count, or 'auto' to sweep the full-scan classifier first");
    grid->add_option("--max-iterations", grid_max_iter, "clustering sweep cap (default 100)");
    grid->add_option("--out", grid_out.out_path, "records file (default: NAME-grid.csv)");
    grid->add_option("--format", grid_out.format_flag, "csv or jsonl");
    grid->add_flag("--no-predictions", grid_out.no_predictions,
                   "skip the per-item predictions sidecar");

    auto* report = app.add_subcommand("report", "accuracy-vs-cost plot from saved records");
    std::string report_records;
    std::string report_baseline;
    std::string report_out;
    report->add_option("--records", report_records, "records file from grid or baseline")
        ->required();
    report->add_option("--baseline-records", report_baseline,
                       "records file holding a full-scan row for reference lines");
    report->add_option("--out", report_out, "output file (default: records stem + .svg)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*fetch) return cmd_fetch(fetch_dataset_name, data_dir);
        if (*baseline) return cmd_baseline(base_dataset, data_dir, base_k, base_sweep, base_out);
        if (*grid)
            return cmd_grid(grid_dataset, data_dir, grid_i, grid_d, grid_k, grid_max_iter,
                            grid_out);
        if (*report) return cmd_report(report_records, report_baseline, report_out);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}

}  // namespace rsrm
