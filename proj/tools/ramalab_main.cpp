// Command-line front end: sample graphs, analyze stored runs, tabulate the
// Tracy-Widom distributions, self-validate against GOE, and export plot data.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "ramalab/harness.hpp"

namespace {

using namespace ramalab;

int env_threads() {
    if (const char* v = std::getenv("RAMALAB_THREADS")) {
        const int t = std::atoi(v);
        if (t > 0) return t;
    }
    return 0;
}

std::string env_out(const std::string& fallback) {
    if (const char* v = std::getenv("RAMALAB_OUT")) return v;
    return fallback;
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

Constraint parse_constraint(const std::string& name) {
    if (name == "none") return Constraint::None;
    if (name == "connected") return Constraint::Connected;
    if (name == "simple_connected") return Constraint::SimpleConnected;
    throw CLI::ValidationError("--constraint", "must be none, connected or simple_connected");
}

void print_cell_summary(const CellResult& cell, std::ostream& out) {
    if (!cell.error.empty()) {
        out << cell.name() << ": ABORTED (" << cell.error << ")\n";
        return;
    }
    const auto& agg = cell.aggregate;
    out << cell.name() << ": rows=" << cell.records.size() << " discarded=" << agg.discarded
        << " mean_plus=" << sig6(agg.mean_plus) << " std_plus=" << sig6(agg.std_plus)
        << " pct_ramanujan=" << sig6(agg.pct_ramanujan) << '\n';
}

std::unique_ptr<std::ofstream> open_or_stdout(const std::string& path, std::ostream*& out) {
    if (path.empty()) {
        out = &std::cout;
        return nullptr;
    }
    auto file = std::make_unique<std::ofstream>(path);
    if (!*file) throw CLI::ValidationError("--out", "cannot open " + path);
    out = file.get();
    return file;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo laboratory for extremal eigenvalues of random regular graphs"};
    app.require_subcommand(1);

    // --- sample ---------------------------------------------------------------
    auto* sample = app.add_subcommand("sample", "sample one ensemble cell and store CSV records");
    std::string family_tag_str = "I", constraint_str = "connected";
    int n = 1002, d = 3, count = 1000;
    std::uint64_t seed = 1;
    std::string out_dir = env_out("runs");
    int threads = env_threads();
    int max_rejections = 10000;
    sample->add_option("--family", family_tag_str, "family tag: B, G, H or I")
        ->check(CLI::IsMember({"B", "G", "H", "I"}));
    sample->add_option("--constraint", constraint_str, "none, connected or simple_connected");
    sample->add_option("--n", n, "number of vertices (even)");
    sample->add_option("--d", d, "degree");
    sample->add_option("--count", count, "graphs to sample");
    sample->add_option("--seed", seed, "master seed");
    sample->add_option("--out", out_dir, "output directory");
    sample->add_option("--threads", threads, "worker threads (0 = hardware)");
    sample->add_option("--max-rejections", max_rejections, "rejection cap per draw");

    // --- sweep ----------------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "run a multi-cell experiment over the N grid");
    std::string sweep_families = "CI,SCI,CB,SCB";
    std::string sweep_d = "3";
    int sweep_samples = 1000;
    std::uint64_t sweep_seed = 1;
    std::string sweep_out = env_out("runs");
    bool full_grid = false;
    std::string sweep_n_list;
    int sweep_threads = env_threads();
    sweep->add_option("--families", sweep_families, "comma list of ensemble tags (e.g. CI,SCB)");
    sweep->add_option("--d", sweep_d, "comma list of degrees");
    sweep->add_option("--samples", sweep_samples, "graphs per cell");
    sweep->add_option("--seed", sweep_seed, "master seed");
    sweep->add_option("--out", sweep_out, "output directory");
    sweep->add_flag("--full-grid", full_grid, "use the full N grid up to 20000 (default caps at 5022)");
    sweep->add_option("--n-list", sweep_n_list, "explicit comma list of N values (overrides grid)");
    sweep->add_option("--threads", sweep_threads, "worker threads (0 = hardware)");

    // --- analyze ----------------------------------------------------------------
    auto* analyze = app.add_subcommand("analyze", "statistical tables from a stored run");
    std::string analyze_in = env_out("runs");
    std::string refs_csv = "tw1,tw2,tw4,normal";
    analyze->add_option("--in", analyze_in, "input directory");
    analyze->add_option("--refs", refs_csv, "references: subset of tw1,tw2,tw4,normal");

    // --- tw-table ---------------------------------------------------------------
    auto* tw_table = app.add_subcommand("tw-table", "CSV table of the Tracy-Widom densities/CDFs");
    double step = 0.01, table_lo = -10.0, table_hi = 6.0;
    std::string table_out;
    tw_table->add_option("--step", step, "s increment");
    tw_table->add_option("--s-lo", table_lo, "table start");
    tw_table->add_option("--s-hi", table_hi, "table end");
    tw_table->add_option("--out", table_out, "output file (default stdout)");

    // --- goe-validate -------------------------------------------------------------
    auto* goe = app.add_subcommand("goe-validate", "test GOE largest-eigenvalue scaling against TW1");
    int goe_n = 200, goe_count = 5000;
    std::uint64_t goe_seed = 7;
    int goe_threads = env_threads();
    goe->add_option("--n", goe_n, "matrix size (>= 50)");
    goe->add_option("--count", goe_count, "number of matrices (>= 1000)");
    goe->add_option("--seed", goe_seed, "master seed");
    goe->add_option("--threads", goe_threads, "worker threads (0 = hardware)");

    // --- plot-data ----------------------------------------------------------------
    auto* plot = app.add_subcommand("plot-data", "emit (x, y, series) CSV for one figure");
    std::string plot_in = env_out("runs"), figure = "mean_vs_N", plot_out;
    plot->add_option("--in", plot_in, "input directory");
    plot->add_option("--figure", figure,
                     "one of: eigen_hist, mean_vs_N, loglog_mean_vs_N, correlation_vs_logN, "
                     "percent_ramanujan, percent_ramanujan_logN");
    plot->add_option("--out", plot_out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sample) {
            ExperimentConfig config;
            config.families = {{family_from_tag(family_tag_str[0]), parse_constraint(constraint_str)}};
            config.n_list = {n};
            config.d_list = {d};
            config.samples_per_cell = count;
            config.master_seed = seed;
            config.output_dir = out_dir;
            config.threads = threads;
            config.max_rejections = max_rejections;
            const RunRecord run = run_experiment(config);
            for (const auto& cell : run.cells) print_cell_summary(cell, std::cout);
        } else if (*sweep) {
            ExperimentConfig config;
            for (const auto& tag : split_list(sweep_families)) {
                config.families.push_back(ensemble_from_tag(tag));
            }
            if (!sweep_n_list.empty()) {
                for (const auto& v : split_list(sweep_n_list)) config.n_list.push_back(std::stoi(v));
            } else {
                config.n_list = full_grid ? full_n_grid() : desk_n_grid();
            }
            for (const auto& v : split_list(sweep_d)) config.d_list.push_back(std::stoi(v));
            config.samples_per_cell = sweep_samples;
            config.master_seed = sweep_seed;
            config.output_dir = sweep_out;
            config.threads = sweep_threads;
            const RunRecord run = run_experiment(config);
            for (const auto& cell : run.cells) print_cell_summary(cell, std::cout);
        } else if (*analyze) {
            const RunRecord run = load_store(analyze_in);
            AnalyzeOptions options;
            options.refs = split_list(refs_csv);
            const ReferenceSet refs;
            analyze_store(run, refs, options, std::cout);
        } else if (*tw_table) {
            const ReferenceSet refs;
            std::ostream* out = nullptr;
            auto file = open_or_stdout(table_out, out);
            *out << "s,f1,F1,f2,F2,f4,F4\n";
            for (double s = table_lo; s <= table_hi + 1e-12; s += step) {
                *out << sig6(s);
                for (int beta : {1, 2, 4}) {
                    *out << ',' << sig6(refs.tw(beta).pdf(s)) << ',' << sig6(refs.tw(beta).cdf(s));
                }
                *out << '\n';
            }
        } else if (*goe) {
            const ReferenceSet refs;
            const GoeReport report = goe_validate(goe_n, goe_count, goe_seed, refs, goe_threads);
            std::cout << "GOE n=" << report.n << " count=" << report.count << '\n'
                      << "mean of scaled largest eigenvalue: " << sig6(report.mean_scaled)
                      << " (TW1 mean " << sig6(refs.tw(1).mean()) << ")\n"
                      << "std of scaled largest eigenvalue:  " << sig6(report.std_scaled)
                      << " (TW1 std " << sig6(refs.tw(1).stddev()) << ")\n"
                      << "mass left of sample mean: " << sig6(report.z_tw1.theta_obs)
                      << "  z vs TW1: " << sig6(report.z_tw1.z) << '\n'
                      << "chi-square vs normalized TW1: " << sig6(report.chi_tw1.statistic)
                      << " (critical 30.1435 at alpha=.05, 36.1908 at alpha=.01)\n";
        } else if (*plot) {
            const RunRecord run = load_store(plot_in);
            std::ostream* out = nullptr;
            auto file = open_or_stdout(plot_out, out);
            emit_plot_data(run, figure, *out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
