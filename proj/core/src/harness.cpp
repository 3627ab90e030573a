#include "ramalab/harness.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "ramalab/errors.hpp"

namespace fs = std::filesystem;

namespace ramalab {

const std::vector<int>& full_n_grid() {
    static const std::vector<int> grid = {26,   32,   40,   50,   64,    80,    100,  126,
                                          158,  200,  252,  316,  400,   502,   632,  796,
                                          1002, 1262, 1588, 2000, 2516,  3168,  3990, 5022,
                                          6324, 7962, 10022, 12618, 15886, 20000};
    return grid;
}

const std::vector<int>& desk_n_grid() {
    static const std::vector<int> grid = [] {
        std::vector<int> g;
        for (int n : full_n_grid()) {
            if (n <= 5022) g.push_back(n);
        }
        return g;
    }();
    return grid;
}

std::string sig6(double value) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

namespace {

std::string full_precision(double value) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Index-based work stealing; rethrows the first worker exception.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    const int workers = std::min<std::size_t>(resolve_threads(threads), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

ReferenceSet::ReferenceSet(const PainleveSolution& solution) {
    tw1_ = std::make_unique<TWDistribution>(1, solution);
    tw2_ = std::make_unique<TWDistribution>(2, solution);
    tw4_ = std::make_unique<TWDistribution>(4, solution);
    tw1_ref_ = std::make_unique<TWReference>(*tw1_);
    tw2_ref_ = std::make_unique<TWReference>(*tw2_);
    tw4_ref_ = std::make_unique<TWReference>(*tw4_);
}

ReferenceSet::ReferenceSet() : ReferenceSet(solve_painleve_ii()) {}

const TWDistribution& ReferenceSet::tw(int beta) const {
    switch (beta) {
        case 1: return *tw1_;
        case 2: return *tw2_;
        case 4: return *tw4_;
        default: throw std::invalid_argument("ReferenceSet: beta must be 1, 2 or 4");
    }
}

const NormalizedReference* ReferenceSet::by_name(const std::string& name) const {
    if (name == "tw1") return tw1_ref_.get();
    if (name == "tw2") return tw2_ref_.get();
    if (name == "tw4") return tw4_ref_.get();
    if (name == "normal") return &normal_ref_;
    return nullptr;
}

std::uint64_t config_hash(const ExperimentConfig& config) {
    std::uint64_t h = mix64(config.master_seed);
    for (const auto& [family, constraint] : config.families) {
        h = hash_combine(h, static_cast<std::uint64_t>(family_tag(family)) << 8 |
                                static_cast<std::uint64_t>(constraint));
    }
    for (int n : config.n_list) h = hash_combine(h, static_cast<std::uint64_t>(n));
    for (int d : config.d_list) h = hash_combine(h, static_cast<std::uint64_t>(d));
    h = hash_combine(h, static_cast<std::uint64_t>(config.samples_per_cell));
    h = hash_combine(h, static_cast<std::uint64_t>(config.max_rejections));
    return h;
}

std::string record_csv_header() {
    return "family,N,d,seed,lambda_plus,lambda_minus,lambda_abs,is_ramanujan,converged,"
           "rejections";
}

std::string record_to_csv(const GraphRecord& r) {
    std::ostringstream out;
    out << r.ensemble << ',' << r.n_vertices << ',' << r.degree << ',' << r.seed << ','
        << full_precision(r.lambda_plus) << ',' << full_precision(r.lambda_minus) << ','
        << full_precision(r.lambda_abs) << ',' << (r.is_ramanujan ? 1 : 0) << ','
        << (r.converged ? 1 : 0) << ',' << r.rejections;
    return out.str();
}

GraphRecord record_from_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (fields.size() != 10) {
        throw std::invalid_argument("record_from_csv: expected 10 fields, got line: " + line);
    }
    GraphRecord r;
    r.ensemble = fields[0];
    r.n_vertices = std::stoi(fields[1]);
    r.degree = std::stoi(fields[2]);
    r.seed = std::stoull(fields[3]);
    r.lambda_plus = std::stod(fields[4]);
    r.lambda_minus = std::stod(fields[5]);
    r.lambda_abs = std::stod(fields[6]);
    r.is_ramanujan = fields[7] == "1";
    r.converged = fields[8] == "1";
    r.rejections = std::stoi(fields[9]);
    return r;
}

std::string CellResult::name() const {
    return tag() + "_N" + std::to_string(n_vertices) + "_d" + std::to_string(degree);
}

namespace {

std::vector<SpectralSummary> summaries_of(std::span<const GraphRecord> records) {
    std::vector<SpectralSummary> out;
    out.reserve(records.size());
    for (const auto& r : records) {
        SpectralSummary s;
        s.lambda_plus = r.lambda_plus;
        s.lambda_minus = r.lambda_minus;
        s.lambda_abs = r.lambda_abs;
        s.is_ramanujan = r.is_ramanujan;
        s.converged = r.converged;
        out.push_back(s);
    }
    return out;
}

CellAggregate aggregate_cell(std::span<const GraphRecord> records, const ReferenceSet& refs) {
    CellAggregate agg;
    std::vector<double> plus, minus;
    for (const auto& r : records) {
        if (!r.converged) {
            ++agg.discarded;
            continue;
        }
        plus.push_back(r.lambda_plus);
        minus.push_back(r.lambda_minus);
    }
    agg.n = plus.size();
    if (agg.n < 2) return agg;

    const std::array<const NormalizedReference*, 4> all = {&refs.tw1(), &refs.tw2(), &refs.tw4(),
                                                           &refs.normal()};
    try {
        const SampleStats sp = standardize(plus);
        agg.mean_plus = sp.mean;
        agg.std_plus = sp.stddev;
        if (agg.n >= 100) {
            for (const auto* ref : all) agg.chi_plus.push_back(chi_square_gof(sp, *ref));
        }
        for (const auto* ref : all) agg.z_plus.push_back(z_mass_left(plus, ref->mass_left_of_mean()));
        const SampleStats sm = standardize(minus);
        agg.mean_minus = sm.mean;
        agg.std_minus = sm.stddev;
    } catch (const DegenerateSampleError&) {
        // constant sample (only plausible for pathological tiny cells)
    }
    try {
        agg.corr = correlation(plus, minus);
    } catch (const DegenerateSampleError&) {
        agg.corr.reset();
    }
    const auto sums = summaries_of(records);
    agg.pct_ramanujan = percent_ramanujan(sums, records.empty() ? 1 : records[0].degree);
    return agg;
}

CellResult compute_cell(Family family, Constraint constraint, int n_vertices, int degree,
                        const ExperimentConfig& config, const ReferenceSet& refs) {
    CellResult cell;
    cell.family = family;
    cell.constraint = constraint;
    cell.n_vertices = n_vertices;
    cell.degree = degree;

    EnsembleSpec spec;
    spec.family = family;
    spec.constraint = constraint;
    spec.n_vertices = n_vertices;
    spec.degree = degree;
    spec.max_rejections = config.max_rejections;
    try {
        spec.validate();
    } catch (const std::exception& e) {
        cell.error = e.what();
        return cell;
    }

    const std::uint64_t family_code = static_cast<std::uint64_t>(family_tag(family)) << 8 |
                                      static_cast<std::uint64_t>(constraint);
    const std::size_t slots = static_cast<std::size_t>(config.samples_per_cell);
    std::vector<std::vector<GraphRecord>> per_slot(slots);
    std::mutex error_mutex;
    std::string error;
    std::atomic<bool> failed{false};

    parallel_for(slots, config.threads, [&](std::size_t slot) {
        if (failed.load(std::memory_order_relaxed)) return;
        try {
            const std::uint64_t seed = derive_stream_seed(
                config.master_seed, family_code, static_cast<std::uint64_t>(n_vertices),
                static_cast<std::uint64_t>(degree), slot);
            Rng rng(seed);
            auto& rows = per_slot[slot];
            for (int attempt = 0; attempt < config.max_attempts_per_slot; ++attempt) {
                const SampleOutcome outcome = sample_ensemble(spec, rng);
                const SpectralSummary summary =
                    extremal_nontrivial_seeded(outcome.graph, config.solver_tol, rng());
                GraphRecord r;
                r.ensemble = cell.tag();
                r.n_vertices = n_vertices;
                r.degree = degree;
                r.seed = seed;
                r.lambda_plus = summary.lambda_plus;
                r.lambda_minus = summary.lambda_minus;
                r.lambda_abs = summary.lambda_abs;
                r.is_ramanujan = summary.is_ramanujan;
                r.converged = summary.converged;
                r.rejections = outcome.rejections;
                rows.push_back(r);
                if (summary.converged) return;
            }
            throw std::runtime_error("eigensolver failed to converge for " +
                                     std::to_string(config.max_attempts_per_slot) +
                                     " replacement draws in a row");
        } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!failed.exchange(true)) error = e.what();
        }
    });

    if (failed) {
        cell.error = error;
        return cell;
    }
    for (auto& rows : per_slot) {
        for (auto& r : rows) cell.records.push_back(std::move(r));
    }
    cell.aggregate = aggregate_cell(cell.records, refs);
    return cell;
}

void write_cell_csv(const fs::path& path, const CellResult& cell) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << record_csv_header() << '\n';
        for (const auto& r : cell.records) out << record_to_csv(r) << '\n';
    }
    fs::rename(tmp, path);
}

std::vector<GraphRecord> read_cell_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != record_csv_header()) {
        throw std::invalid_argument(path.string() + ": bad or missing CSV header");
    }
    std::vector<GraphRecord> records;
    while (std::getline(in, line)) {
        if (!line.empty()) records.push_back(record_from_csv(line));
    }
    return records;
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
    nlohmann::json j;
    std::vector<std::string> tags;
    for (const auto& [family, constraint] : config.families) {
        tags.push_back(ensemble_tag(family, constraint));
    }
    j["families"] = tags;
    j["n_list"] = config.n_list;
    j["d_list"] = config.d_list;
    j["samples_per_cell"] = config.samples_per_cell;
    j["master_seed"] = config.master_seed;
    j["max_rejections"] = config.max_rejections;
    j["solver_tol"] = config.solver_tol;
    return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig config;
    for (const auto& tag : j.at("families")) {
        config.families.push_back(ensemble_from_tag(tag.get<std::string>()));
    }
    config.n_list = j.at("n_list").get<std::vector<int>>();
    config.d_list = j.at("d_list").get<std::vector<int>>();
    config.samples_per_cell = j.at("samples_per_cell").get<int>();
    config.master_seed = j.at("master_seed").get<std::uint64_t>();
    config.max_rejections = j.at("max_rejections").get<int>();
    config.solver_tol = j.at("solver_tol").get<double>();
    return config;
}

void write_manifest(const fs::path& dir, const RunRecord& run) {
    nlohmann::json j;
    j["config"] = config_to_json(run.config);
    char hash_hex[24];
    std::snprintf(hash_hex, sizeof hash_hex, "%016llx",
                  static_cast<unsigned long long>(run.hash));
    j["config_hash"] = hash_hex;
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& cell : run.cells) {
        nlohmann::json c;
        c["name"] = cell.name();
        c["file"] = cell.name() + ".csv";
        c["ensemble"] = cell.tag();
        c["N"] = cell.n_vertices;
        c["d"] = cell.degree;
        c["rows"] = cell.records.size();
        c["discarded"] = cell.aggregate.discarded;
        c["converged"] = cell.aggregate.n;
        c["mean_plus"] = cell.aggregate.mean_plus;
        c["std_plus"] = cell.aggregate.std_plus;
        c["pct_ramanujan"] = cell.aggregate.pct_ramanujan;
        c["error"] = cell.error;
        cells.push_back(c);
    }
    j["cells"] = cells;
    const fs::path tmp = dir / "manifest.json.tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << j.dump(2) << '\n';
    }
    fs::rename(tmp, dir / "manifest.json");
}

}  // namespace

RunRecord run_experiment(const ExperimentConfig& config) {
    if (config.families.empty()) throw std::invalid_argument("run_experiment: no families");
    if (config.n_list.empty()) throw std::invalid_argument("run_experiment: empty N list");
    if (config.d_list.empty()) throw std::invalid_argument("run_experiment: empty d list");
    if (config.samples_per_cell < 1) {
        throw std::invalid_argument("run_experiment: samples_per_cell must be >= 1");
    }
    for (int n : config.n_list) {
        if (n < 2 || n % 2 != 0) throw std::invalid_argument("run_experiment: N must be even");
    }

    const ReferenceSet refs;
    RunRecord run;
    run.config = config;
    run.hash = config_hash(config);

    const bool persist = !config.output_dir.empty();
    const fs::path dir(config.output_dir);
    if (persist) fs::create_directories(dir);

    for (const auto& [family, constraint] : config.families) {
        for (int degree : config.d_list) {
            for (int n_vertices : config.n_list) {
                CellResult cell;
                cell.family = family;
                cell.constraint = constraint;
                cell.n_vertices = n_vertices;
                cell.degree = degree;
                const fs::path path = dir / (cell.name() + ".csv");
                if (persist && fs::exists(path)) {
                    cell.records = read_cell_csv(path);
                    cell.aggregate = aggregate_cell(cell.records, refs);
                } else {
                    cell = compute_cell(family, constraint, n_vertices, degree, config, refs);
                    if (persist && cell.error.empty()) write_cell_csv(path, cell);
                }
                run.cells.push_back(std::move(cell));
            }
        }
    }
    if (persist) write_manifest(dir, run);
    return run;
}

RunRecord load_store(const std::string& dir_name) {
    const fs::path dir(dir_name);
    const ReferenceSet refs;
    RunRecord run;

    const fs::path manifest_path = dir / "manifest.json";
    if (fs::exists(manifest_path)) {
        std::ifstream in(manifest_path);
        nlohmann::json j;
        in >> j;
        run.config = config_from_json(j.at("config"));
        run.hash = config_hash(run.config);
        for (const auto& c : j.at("cells")) {
            CellResult cell;
            const auto [family, constraint] = ensemble_from_tag(c.at("ensemble").get<std::string>());
            cell.family = family;
            cell.constraint = constraint;
            cell.n_vertices = c.at("N").get<int>();
            cell.degree = c.at("d").get<int>();
            cell.error = c.at("error").get<std::string>();
            const fs::path file = dir / c.at("file").get<std::string>();
            if (cell.error.empty() && fs::exists(file)) {
                cell.records = read_cell_csv(file);
                cell.aggregate = aggregate_cell(cell.records, refs);
            }
            run.cells.push_back(std::move(cell));
        }
        return run;
    }

    // No manifest: scan for cell CSVs.
    std::vector<fs::path> files;
    if (fs::exists(dir)) {
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.path().extension() == ".csv") files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
        auto records = read_cell_csv(file);
        if (records.empty()) continue;
        CellResult cell;
        const auto [family, constraint] = ensemble_from_tag(records[0].ensemble);
        cell.family = family;
        cell.constraint = constraint;
        cell.n_vertices = records[0].n_vertices;
        cell.degree = records[0].degree;
        cell.records = std::move(records);
        cell.aggregate = aggregate_cell(cell.records, refs);
        run.cells.push_back(std::move(cell));
    }
    return run;
}

namespace {

class DenseSymmetricOperator final : public LinearOperator {
  public:
    explicit DenseSymmetricOperator(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {}
    int dim() const override { return static_cast<int>(matrix_.rows()); }
    void apply(const double* x, double* y) const override {
        Eigen::Map<const Eigen::VectorXd> xv(x, matrix_.rows());
        Eigen::Map<Eigen::VectorXd> yv(y, matrix_.rows());
        yv.noalias() = matrix_ * xv;
    }

  private:
    Eigen::MatrixXd matrix_;
};

}  // namespace

GoeReport goe_validate(int n, int count, std::uint64_t seed, const ReferenceSet& refs,
                       int threads) {
    if (n < 50) throw std::invalid_argument("goe_validate: n must be >= 50");
    if (count < 1000) throw std::invalid_argument("goe_validate: count must be >= 1000");

    const std::uint64_t goe_code = 0x474f45;  // 'G','O','E'
    std::vector<double> scaled(static_cast<std::size_t>(count));
    const double edge = 2.0 * std::sqrt(static_cast<double>(n));
    const double fluct = std::pow(static_cast<double>(n), 1.0 / 6.0);

    parallel_for(static_cast<std::size_t>(count), threads, [&](std::size_t i) {
        Rng rng(derive_stream_seed(seed, goe_code, static_cast<std::uint64_t>(n), 0, i));
        std::normal_distribution<double> normal(0.0, 1.0);
        Eigen::MatrixXd a(n, n);
        for (int r = 0; r < n; ++r) {
            a(r, r) = normal(rng) * std::sqrt(2.0);
            for (int c = r + 1; c < n; ++c) {
                const double v = normal(rng);
                a(r, c) = v;
                a(c, r) = v;
            }
        }
        DenseSymmetricOperator op(std::move(a));
        LanczosOptions options;
        options.want_smallest = false;
        options.start_seed = rng();
        const ExtremalEigenResult r = lanczos_extremal(op, {}, options);
        scaled[i] = (r.largest - edge) * fluct;
    });

    GoeReport report;
    report.n = n;
    report.count = count;
    const SampleStats stats = standardize(scaled);
    report.mean_scaled = stats.mean;
    report.std_scaled = stats.stddev;
    report.z_tw1 = z_mass_left(scaled, refs.tw1().mass_left_of_mean());
    report.chi_tw1 = chi_square_gof(stats, refs.tw1());
    return report;
}

namespace {

struct SeriesKey {
    std::string tag;
    int degree;
    bool operator<(const SeriesKey& other) const {
        return std::tie(tag, degree) < std::tie(other.tag, other.degree);
    }
};

std::map<SeriesKey, std::vector<const CellResult*>> group_cells(const RunRecord& run) {
    std::map<SeriesKey, std::vector<const CellResult*>> groups;
    for (const auto& cell : run.cells) {
        if (!cell.error.empty() || cell.aggregate.n < 2) continue;
        groups[{cell.tag(), cell.degree}].push_back(&cell);
    }
    for (auto& [key, cells] : groups) {
        std::sort(cells.begin(), cells.end(), [](const CellResult* a, const CellResult* b) {
            return a->n_vertices < b->n_vertices;
        });
    }
    return groups;
}

std::vector<double> converged_plus(const CellResult& cell) {
    std::vector<double> plus;
    for (const auto& r : cell.records) {
        if (r.converged) plus.push_back(r.lambda_plus);
    }
    return plus;
}

}  // namespace

void emit_plot_data(const RunRecord& run, const std::string& figure_id, std::ostream& out) {
    const auto groups = group_cells(run);
    if (groups.empty()) throw std::invalid_argument("emit_plot_data: store has no usable cells");

    out << "x,y,series\n";
    if (figure_id == "eigen_hist") {
        for (const auto& [key, cells] : groups) {
            for (const CellResult* cell : cells) {
                const auto plus = converged_plus(*cell);
                const auto [lo_it, hi_it] = std::minmax_element(plus.begin(), plus.end());
                const double lo = *lo_it, hi = *hi_it;
                if (hi <= lo) continue;
                constexpr int kBins = 40;
                const double width = (hi - lo) / kBins;
                std::vector<int> counts(kBins, 0);
                for (double v : plus) {
                    const int b = std::min(kBins - 1, static_cast<int>((v - lo) / width));
                    ++counts[static_cast<std::size_t>(b)];
                }
                for (int b = 0; b < kBins; ++b) {
                    const double center = lo + (b + 0.5) * width;
                    const double density = counts[static_cast<std::size_t>(b)] /
                                           (width * static_cast<double>(plus.size()));
                    out << sig6(center) << ',' << sig6(density) << ',' << key.tag << " N="
                        << cell->n_vertices << " d=" << key.degree << '\n';
                }
            }
        }
        return;
    }

    const auto series_name = [](const SeriesKey& key) {
        return key.tag + " d=" + std::to_string(key.degree);
    };

    if (figure_id == "mean_vs_N") {
        for (const auto& [key, cells] : groups) {
            for (const CellResult* cell : cells) {
                out << cell->n_vertices << ',' << sig6(cell->aggregate.mean_plus) << ','
                    << series_name(key) << '\n';
            }
        }
    } else if (figure_id == "loglog_mean_vs_N") {
        for (const auto& [key, cells] : groups) {
            const double limit = ramanujan_threshold(key.degree);
            for (const CellResult* cell : cells) {
                const double gap = limit - cell->aggregate.mean_plus;
                if (gap <= 0.0) continue;
                out << sig6(std::log(cell->n_vertices)) << ',' << sig6(std::log(gap)) << ','
                    << series_name(key) << '\n';
            }
        }
    } else if (figure_id == "correlation_vs_logN") {
        for (const auto& [key, cells] : groups) {
            for (const CellResult* cell : cells) {
                if (cell->family == Family::Bipartite || !cell->aggregate.corr) continue;
                out << sig6(std::log(cell->n_vertices)) << ',' << sig6(cell->aggregate.corr->r)
                    << ',' << series_name(key) << '\n';
            }
        }
    } else if (figure_id == "percent_ramanujan" || figure_id == "percent_ramanujan_logN") {
        const bool log_axis = figure_id == "percent_ramanujan_logN";
        for (const auto& [key, cells] : groups) {
            for (const CellResult* cell : cells) {
                const double x = log_axis ? std::log(cell->n_vertices)
                                          : static_cast<double>(cell->n_vertices);
                out << sig6(x) << ',' << sig6(cell->aggregate.pct_ramanujan) << ','
                    << series_name(key) << '\n';
            }
        }
    } else {
        throw std::invalid_argument("emit_plot_data: unknown figure id " + figure_id);
    }
}

void analyze_store(const RunRecord& run, const ReferenceSet& refs, const AnalyzeOptions& options,
                   std::ostream& out) {
    std::vector<const NormalizedReference*> selected;
    for (const auto& name : options.refs) {
        const NormalizedReference* ref = refs.by_name(name);
        if (!ref) throw std::invalid_argument("analyze: unknown reference " + name);
        selected.push_back(ref);
    }
    const auto groups = group_cells(run);
    if (groups.empty()) throw std::invalid_argument("analyze: store has no usable cells");

    for (const auto& [key, cells] : groups) {
        out << "=== ensemble " << key.tag << ", d = " << key.degree << " ===\n\n";

        out << "chi-square of standardized lambda_plus (20 bins, 19 dof; critical 30.1435 at "
               "alpha=.05, 36.1908 at alpha=.01)\n";
        out << "       N";
        for (const auto* ref : selected) out << '\t' << ref->name();
        out << '\n';
        for (const CellResult* cell : cells) {
            const auto plus = converged_plus(*cell);
            if (plus.size() < 100) continue;
            const SampleStats sp = standardize(plus);
            out << "    " << cell->n_vertices;
            for (const auto* ref : selected) out << '\t' << sig6(chi_square_gof(sp, *ref).statistic);
            out << '\n';
        }
        out << '\n';

        out << "mass left of the sample mean and z-statistics\n";
        out << "       N\ttheta_obs";
        for (const auto* ref : selected) out << "\tz_" << ref->name();
        out << '\n';
        for (const CellResult* cell : cells) {
            const auto plus = converged_plus(*cell);
            if (plus.size() < 2) continue;
            out << "    " << cell->n_vertices;
            bool first = true;
            for (const auto* ref : selected) {
                const ZReport z = z_mass_left(plus, ref->mass_left_of_mean());
                if (first) {
                    out << '\t' << sig6(z.theta_obs);
                    first = false;
                }
                out << '\t' << sig6(z.z);
            }
            out << '\n';
        }
        out << '\n';

        const auto [family, constraint] = ensemble_from_tag(key.tag);
        (void)constraint;
        if (family != Family::Bipartite) {
            out << "correlation of lambda_plus and lambda_minus\n";
            out << "       N\tlog N\tr\n";
            for (const CellResult* cell : cells) {
                if (!cell->aggregate.corr) continue;
                out << "    " << cell->n_vertices << '\t' << sig6(std::log(cell->n_vertices))
                    << '\t' << sig6(cell->aggregate.corr->r) << '\n';
            }
            out << '\n';
        }

        out << "power-law fits: mean ~ 2 sqrt(d-1) + c_mu N^m, std ~ c_sigma N^s\n";
        out << "  window\tc_mu\tm\tc_sigma\ts\tsigma_dist(N_max)\n";
        static constexpr std::pair<int, int> kWindows[] = {
            {26, 20000}, {80, 20000}, {252, 20000}, {26, 64},       {80, 200},
            {252, 632},  {796, 2000}, {2516, 6324}, {7962, 20000},
        };
        for (const auto& [lo, hi] : kWindows) {
            std::vector<double> ns, means, stds;
            for (const CellResult* cell : cells) {
                if (cell->n_vertices < lo || cell->n_vertices > hi) continue;
                ns.push_back(cell->n_vertices);
                means.push_back(cell->aggregate.mean_plus);
                stds.push_back(cell->aggregate.std_plus);
            }
            if (ns.size() < 3) continue;
            out << "  {" << lo << ".." << hi << "}\t";
            try {
                const FitReport fit = fit_exponents(ns, means, stds, key.degree);
                out << sig6(fit.c_mu) << '\t' << sig6(fit.m) << '\t' << sig6(fit.c_sigma) << '\t'
                    << sig6(fit.s) << '\t' << sig6(threshold_sigma_distance(fit, ns.back()))
                    << '\n';
            } catch (const FitDomainError&) {
                out << "n/a (mean above the 2 sqrt(d-1) limit)\n";
            }
        }
        out << '\n';

        out << "percent Ramanujan\n";
        out << "       N\tfraction\tdiscarded\n";
        for (const CellResult* cell : cells) {
            out << "    " << cell->n_vertices << '\t' << sig6(cell->aggregate.pct_ramanujan)
                << '\t' << cell->aggregate.discarded << '\n';
        }
        out << '\n';
    }
}

}  // namespace ramalab
