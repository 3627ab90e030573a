#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramalab/ensembles.hpp"
#include "ramalab/reference.hpp"
#include "ramalab/stats.hpp"
#include "ramalab/tracy_widom.hpp"

namespace ramalab {

// The study's N grid (30 values, 26..20000) and its desk-scale truncation
// (24 values, 26..5022).
const std::vector<int>& full_n_grid();
const std::vector<int>& desk_n_grid();

// The four candidate laws, built once and shared read-only.
class ReferenceSet {
  public:
    explicit ReferenceSet(const PainleveSolution& solution);
    ReferenceSet();  // solves Painleve II on the default grid

    const TWDistribution& tw(int beta) const;
    const NormalizedReference& tw1() const { return *tw1_ref_; }
    const NormalizedReference& tw2() const { return *tw2_ref_; }
    const NormalizedReference& tw4() const { return *tw4_ref_; }
    const NormalizedReference& normal() const { return normal_ref_; }

    // nullptr when the name is unknown; names: tw1, tw2, tw4, normal.
    const NormalizedReference* by_name(const std::string& name) const;

  private:
    std::unique_ptr<TWDistribution> tw1_, tw2_, tw4_;
    std::unique_ptr<TWReference> tw1_ref_, tw2_ref_, tw4_ref_;
    StandardNormalReference normal_ref_;
};

struct ExperimentConfig {
    std::vector<std::pair<Family, Constraint>> families;
    std::vector<int> n_list;
    std::vector<int> d_list;
    int samples_per_cell = 1000;
    std::uint64_t master_seed = 1;
    std::string output_dir;  // empty: in-memory only
    int max_rejections = 10000;
    int threads = 0;  // 0: hardware concurrency
    double solver_tol = 1e-10;
    // Replacement draws allowed per sample slot before the cell is declared
    // stuck and aborted.
    int max_attempts_per_slot = 8;
};

std::uint64_t config_hash(const ExperimentConfig& config);

// One per-graph result row; the CSV schema.
struct GraphRecord {
    std::string ensemble;  // e.g. "SCI"
    int n_vertices = 0;
    int degree = 0;
    std::uint64_t seed = 0;  // stream seed of the sample slot
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
    double lambda_abs = 0.0;
    bool is_ramanujan = false;
    bool converged = false;
    int rejections = 0;
};

std::string record_csv_header();
std::string record_to_csv(const GraphRecord& record);
GraphRecord record_from_csv(const std::string& line);

struct CellAggregate {
    std::size_t n = 0;  // converged rows
    double mean_plus = 0.0, std_plus = 0.0;
    double mean_minus = 0.0, std_minus = 0.0;
    std::vector<ChiSquareReport> chi_plus;  // vs tw1, tw2, tw4, normal
    std::vector<ZReport> z_plus;
    std::optional<CorrelationReport> corr;  // absent for degenerate pairs
    double pct_ramanujan = 0.0;
    int discarded = 0;
};

struct CellResult {
    Family family = Family::Matching;
    Constraint constraint = Constraint::None;
    int n_vertices = 0;
    int degree = 0;
    std::vector<GraphRecord> records;  // slot order; discarded rows included
    CellAggregate aggregate;
    std::string error;  // nonempty: cell aborted with this diagnostic

    std::string tag() const { return ensemble_tag(family, constraint); }
    std::string name() const;  // e.g. "SCI_N1002_d3"
};

struct RunRecord {
    ExperimentConfig config;
    std::uint64_t hash = 0;
    std::vector<CellResult> cells;
};

// Samples, solves and aggregates every (family, N, d) cell. Deterministic
// given the master seed: the stream of slot i in a cell is seeded by
// hash(master_seed, ensemble, N, d, i) and replacement draws for discarded
// graphs continue the same stream. With an output directory, each finished
// cell is written as CSV (plus a JSON manifest at the end) and cells whose
// file already exists are loaded instead of recomputed.
RunRecord run_experiment(const ExperimentConfig& config);

// Reads back a persisted store (the manifest plus per-cell CSVs) and
// recomputes aggregates.
RunRecord load_store(const std::string& dir);

// --- GOE self-validation -----------------------------------------------------

struct GoeReport {
    int n = 0;
    int count = 0;
    double mean_scaled = 0.0;  // mean of (lambda_max - 2 sqrt(N)) N^(1/6)
    double std_scaled = 0.0;
    ZReport z_tw1;
    ChiSquareReport chi_tw1;
};

// Samples `count` GOE matrices (off-diagonal N(0,1), diagonal N(0,2)),
// extracts lambda_max, undoes the edge scaling
// lambda_max = 2 sqrt(N) + scaled / N^(1/6), and tests the standardized
// sample against normalized TW beta=1.
GoeReport goe_validate(int n, int count, std::uint64_t seed, const ReferenceSet& refs,
                       int threads = 0);

// --- plot data ----------------------------------------------------------------

// figure ids: eigen_hist, mean_vs_N, loglog_mean_vs_N, correlation_vs_logN,
// percent_ramanujan, percent_ramanujan_logN. Emits "x,y,series" rows.
void emit_plot_data(const RunRecord& run, const std::string& figure_id, std::ostream& out);

// --- text reports (the `analyze` subcommand) ----------------------------------

struct AnalyzeOptions {
    std::vector<std::string> refs = {"tw1", "tw2", "tw4", "normal"};
};

void analyze_store(const RunRecord& run, const ReferenceSet& refs, const AnalyzeOptions& options,
                   std::ostream& out);

// "%.6g" -- all human-facing numbers use 6 significant digits.
std::string sig6(double value);

}  // namespace ramalab
