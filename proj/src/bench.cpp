#include "sparse_sense/bench.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include "sparse_sense/csv.hpp"
#include "sparse_sense/error.hpp"
#include "sparse_sense/sparsifier.hpp"

namespace sparse_sense {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------- config

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                    const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <class T>
void read_opt(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

MatrixMode parse_matrix_mode(const std::string& name) {
  if (name == "fresh") return MatrixMode::Fresh;
  if (name == "fixed") return MatrixMode::Fixed;
  throw ConfigError("matrix_mode must be 'fresh' or 'fixed', got '" + name + "'");
}

// ------------------------------------------------------------------ csv

std::string num(std::size_t v) { return std::to_string(v); }
std::string num(double v) { return csv::format_double(v); }

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

// Header-indexed view over the rows of one CSV file.
class CsvTable {
 public:
  explicit CsvTable(std::istream& in) {
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      auto fields = csv::parse_row(line);
      if (header) {
        for (std::size_t i = 0; i < fields.size(); ++i) column_[fields[i]] = i;
        header = false;
      } else {
        if (fields.size() != column_.size())
          throw std::runtime_error("CSV row has " + std::to_string(fields.size()) +
                                   " fields, header has " + std::to_string(column_.size()));
        rows_.push_back(std::move(fields));
      }
    }
    if (!header && column_.count("schema_version")) {
      for (const auto& row : rows_) {
        if (row[column_.at("schema_version")] != std::to_string(kCsvSchemaVersion))
          throw std::runtime_error("unsupported CSV schema_version " +
                                   row[column_.at("schema_version")]);
      }
    }
  }

  bool has(const std::string& name) const { return column_.count(name) != 0; }
  bool empty_file() const { return column_.empty(); }
  std::size_t size() const { return rows_.size(); }

  const std::string& get(std::size_t row, const std::string& name) const {
    auto it = column_.find(name);
    if (it == column_.end()) throw std::runtime_error("CSV lacks column '" + name + "'");
    return rows_[row][it->second];
  }
  double real(std::size_t row, const std::string& name) const {
    const std::string& s = get(row, name);
    return s.empty() ? 0.0 : std::stod(s);
  }
  std::size_t count(std::size_t row, const std::string& name) const {
    return static_cast<std::size_t>(std::stoull(get(row, name)));
  }

 private:
  std::map<std::string, std::size_t> column_;
  std::vector<std::vector<std::string>> rows_;
};

std::string halt_field(const RecoveryOutcome& o) {
  if (o.halt() == HaltReason::Error) return "error:" + o.error_tag();
  return std::string(to_string(o.halt()));
}

std::string density_tag(double density) {
  std::string s = csv::format_double(density);
  std::replace(s.begin(), s.end(), '.', 'p');
  return s;
}

}  // namespace

// ---------------------------------------------------------------- config

std::vector<std::size_t> ExperimentConfig::sparsities() const {
  if (!k_values.empty()) {
    std::vector<std::size_t> ks = k_values;
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    return ks;
  }
  std::vector<std::size_t> ks;
  for (std::size_t k = k_min; k <= k_max; k += k_step) ks.push_back(k);
  return ks;
}

void ExperimentConfig::validate() const {
  try {
    ensemble.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (densities.empty()) throw ConfigError("densities must not be empty");
  for (double s : densities) {
    if (!(s > 0.0 && s <= 1.0)) throw ConfigError("densities must lie in (0, 1]");
    if (s == 1.0) continue;
    try {
      ones_for_density(s, ensemble.n);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (algorithms.empty()) throw ConfigError("algorithms must not be empty");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (k_values.empty()) {
    if (k_step < 1) throw ConfigError("k_range.step must be >= 1");
    if (k_min < 1 || k_min > k_max || k_max > ensemble.N)
      throw ConfigError("k range must satisfy 1 <= min <= max <= N");
  } else {
    for (std::size_t k : k_values) {
      if (k < 1 || k > ensemble.N) throw ConfigError("k_values must lie in [1, N]");
    }
  }
  if (!(t > 0.0 && t < 1.0)) throw ConfigError("t must lie in (0, 1)");
  if (experiment_id.empty()) throw ConfigError("experiment_id must not be empty");
}

ExperimentConfig parse_config(const json& doc) {
  ExperimentConfig cfg;
  try {
    reject_unknown(doc,
                   {"experiment_id", "ensemble", "densities", "algorithms", "k_range", "k_values",
                    "trials", "t", "seed", "matrix_mode", "signal_dist", "renormalize",
                    "record_wall_time", "output", "lp", "cosamp", "threshold"},
                   "config");
    if (!doc.contains("ensemble")) throw ConfigError("config needs an 'ensemble' object");
    cfg.ensemble = doc.at("ensemble").get<EnsembleSpec>();

    read_opt(doc, "experiment_id", cfg.experiment_id);
    read_opt(doc, "densities", cfg.densities);
    if (doc.contains("algorithms")) {
      cfg.algorithms.clear();
      for (const auto& a : doc.at("algorithms")) cfg.algorithms.push_back(parse_algorithm(a.get<std::string>()));
    }
    if (doc.contains("k_range")) {
      const json& r = doc.at("k_range");
      reject_unknown(r, {"min", "max", "step"}, "k_range");
      read_opt(r, "min", cfg.k_min);
      read_opt(r, "max", cfg.k_max);
      read_opt(r, "step", cfg.k_step);
    }
    read_opt(doc, "k_values", cfg.k_values);
    if (doc.contains("k_range") && !cfg.k_values.empty())
      throw ConfigError("give either k_range or k_values, not both");
    read_opt(doc, "trials", cfg.trials);
    read_opt(doc, "t", cfg.t);
    read_opt(doc, "seed", cfg.seed);
    if (doc.contains("matrix_mode")) cfg.matrix_mode = parse_matrix_mode(doc.at("matrix_mode").get<std::string>());
    if (doc.contains("signal_dist"))
      cfg.signal_dist = parse_signal_dist(doc.at("signal_dist").get<std::string>());
    read_opt(doc, "renormalize", cfg.renormalize);
    read_opt(doc, "record_wall_time", cfg.record_wall_time);
    if (doc.contains("output")) cfg.output = doc.at("output").get<std::string>();

    if (doc.contains("lp")) {
      const json& lp = doc.at("lp");
      reject_unknown(lp,
                     {"max_iters", "feas_tol", "rc_tol", "pivot_tol", "pricing_window",
                      "refactor_interval", "bland_after"},
                     "lp");
      LpOptions& o = cfg.trial.lp;
      read_opt(lp, "max_iters", o.max_iters);
      read_opt(lp, "feas_tol", o.feas_tol);
      read_opt(lp, "rc_tol", o.rc_tol);
      read_opt(lp, "pivot_tol", o.pivot_tol);
      read_opt(lp, "pricing_window", o.pricing_window);
      read_opt(lp, "refactor_interval", o.refactor_interval);
      read_opt(lp, "bland_after", o.bland_after);
    }
    if (doc.contains("cosamp")) {
      const json& g = doc.at("cosamp");
      reject_unknown(g, {"max_iters", "residual_tol", "stagnation_window", "stagnation_rel"},
                     "cosamp");
      GreedyOpts& o = cfg.trial.greedy;
      read_opt(g, "max_iters", o.max_iters);
      read_opt(g, "residual_tol", o.residual_tol);
      read_opt(g, "stagnation_window", o.stagnation_window);
      read_opt(g, "stagnation_rel", o.stagnation_rel);
    }
    if (doc.contains("threshold")) {
      const json& th = doc.at("threshold");
      reject_unknown(th, {"k_ceiling", "early_stop"}, "threshold");
      read_opt(th, "k_ceiling", cfg.threshold.k_ceiling);
      read_opt(th, "early_stop", cfg.threshold.early_stop);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SPARSE_SENSE_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return std::max(1, omp_get_max_threads());
}

// ----------------------------------------------------------------- sweep

SweepResult run_sweep(const ExperimentConfig& cfg, int workers) {
  cfg.validate();
  const std::vector<std::size_t> ks = cfg.sparsities();
  const std::size_t D = cfg.densities.size();
  const std::size_t A = cfg.algorithms.size();
  const std::size_t K = ks.size();
  const std::size_t T = cfg.trials;
  const Seed master{cfg.seed};

  std::vector<MatrixSource> sources;
  std::vector<std::optional<SensingMatrix>> fixed(D);
  for (std::size_t d = 0; d < D; ++d) {
    sources.push_back({cfg.ensemble, cfg.densities[d], cfg.renormalize, cfg.matrix_mode,
                       cfg.signal_dist});
    if (cfg.matrix_mode == MatrixMode::Fixed) {
      try {
        fixed[d] = sources[d].draw(derive(master, StreamTag::Matrix));
      } catch (const std::exception&) {
        // Left empty: every trial at this density is recorded as errored.
      }
    }
  }

  SweepResult result;
  result.trials.resize(D * A * K * T);
  const auto units = static_cast<std::int64_t>(D * K * T);

#pragma omp parallel for num_threads(std::max(1, workers)) schedule(dynamic, 1)
  for (std::int64_t u = 0; u < units; ++u) {
    const std::size_t trial = static_cast<std::size_t>(u) % T;
    const std::size_t ki = static_cast<std::size_t>(u) / T % K;
    const std::size_t d = static_cast<std::size_t>(u) / (T * K);
    const std::size_t k = ks[ki];
    const Seed ts = trial_seed(master, k, trial);

    std::optional<SensingMatrix> fresh;
    std::optional<SparseSignal> signal;
    std::string setup_error;
    try {
      if (cfg.matrix_mode == MatrixMode::Fresh) fresh = sources[d].draw(ts);
      else if (!fixed[d]) setup_error = "fixed matrix could not be drawn";
      signal = sample_signal({cfg.ensemble.N, k, cfg.signal_dist}, derive(ts, StreamTag::Signal));
    } catch (const std::exception& e) {
      setup_error = e.what();
    }
    const SensingMatrix* phi = fresh ? &*fresh : (fixed[d] ? &*fixed[d] : nullptr);

    for (std::size_t a = 0; a < A; ++a) {
      const RecoveryOutcome outcome = setup_error.empty()
                                          ? run_trial(*phi, *signal, cfg.algorithms[a], cfg.trial)
                                          : RecoveryOutcome::failed(setup_error, 0.0);
      TrialRecord& r = result.trials[((d * A + a) * K + ki) * T + trial];
      r.experiment_id = cfg.experiment_id;
      r.ensemble = cfg.ensemble.kind;
      r.n = cfg.ensemble.n;
      r.N = cfg.ensemble.N;
      r.density = cfg.densities[d];
      r.algorithm = cfg.algorithms[a];
      r.k = k;
      r.trial = trial;
      r.seed = ts.master;
      r.success = outcome.success();
      r.l1_error = outcome.l1_error();
      r.wall_time_s = outcome.wall_time_s();
      r.iterations = outcome.iterations();
      r.halt = halt_field(outcome);
    }
  }

  for (std::size_t cell = 0; cell < D * A * K; ++cell) {
    const TrialRecord& first = result.trials[cell * T];
    SummaryRow s;
    s.experiment_id = first.experiment_id;
    s.ensemble = first.ensemble;
    s.n = first.n;
    s.N = first.N;
    s.density = first.density;
    s.algorithm = first.algorithm;
    s.k = first.k;
    s.trials = T;
    double time = 0.0;
    for (std::size_t i = 0; i < T; ++i) {
      const TrialRecord& r = result.trials[cell * T + i];
      s.successes += r.success ? 1 : 0;
      time += r.wall_time_s;
    }
    s.mean_wall_time_s = time / static_cast<double>(T);
    result.summary.push_back(std::move(s));
  }
  return result;
}

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& rows,
                      bool record_wall_time) {
  csv::write_row(out, {"schema_version", "experiment_id", "ensemble", "n", "N", "density",
                       "algorithm", "k", "trial", "seed", "success", "l1_error", "wall_time_s",
                       "iterations", "halt"});
  for (const TrialRecord& r : rows) {
    csv::write_row(out, {std::to_string(kCsvSchemaVersion), r.experiment_id,
                         std::string(to_string(r.ensemble)), num(r.n), num(r.N), num(r.density),
                         std::string(to_string(r.algorithm)), num(r.k), num(r.trial),
                         std::to_string(r.seed), r.success ? "1" : "0", num(r.l1_error),
                         record_wall_time ? num(r.wall_time_s) : std::string(),
                         num(r.iterations), r.halt});
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  csv::write_row(out, {"schema_version", "experiment_id", "ensemble", "n", "N", "density",
                       "algorithm", "k", "trials", "successes", "success_rate",
                       "mean_wall_time_s"});
  for (const SummaryRow& s : rows) {
    csv::write_row(out, {std::to_string(kCsvSchemaVersion), s.experiment_id,
                         std::string(to_string(s.ensemble)), num(s.n), num(s.N), num(s.density),
                         std::string(to_string(s.algorithm)), num(s.k), num(s.trials),
                         num(s.successes), num(s.success_rate()), num(s.mean_wall_time_s)});
  }
}

std::vector<SummaryRow> read_summary_csv(std::istream& in) {
  CsvTable table(in);
  std::vector<SummaryRow> rows;
  for (std::size_t i = 0; i < table.size(); ++i) {
    SummaryRow s;
    s.experiment_id = table.get(i, "experiment_id");
    s.ensemble = parse_ensemble_kind(table.get(i, "ensemble"));
    s.n = table.count(i, "n");
    s.N = table.count(i, "N");
    s.density = table.real(i, "density");
    s.algorithm = parse_algorithm(table.get(i, "algorithm"));
    s.k = table.count(i, "k");
    s.trials = table.count(i, "trials");
    s.successes = table.count(i, "successes");
    s.mean_wall_time_s = table.real(i, "mean_wall_time_s");
    rows.push_back(std::move(s));
  }
  return rows;
}

// ------------------------------------------------------------- threshold

std::vector<ThresholdRow> run_threshold(const ExperimentConfig& cfg, int workers) {
  cfg.validate();
  std::vector<ThresholdRow> rows;
  ThresholdOptions opts = cfg.threshold;
  opts.workers = std::max(1, workers);
  for (double density : cfg.densities) {
    const MatrixSource source{cfg.ensemble, density, cfg.renormalize, cfg.matrix_mode,
                              cfg.signal_dist};
    for (Algorithm algo : cfg.algorithms) {
      ThresholdRow row{cfg.experiment_id, cfg.ensemble.kind, cfg.ensemble.n, cfg.ensemble.N,
                       density, algo, {}};
      try {
        row.estimate = estimate_for_matrix(source, algo, cfg.t, Seed{cfg.seed}, opts, cfg.trial);
      } catch (const CeilingReachedError& e) {
        row.estimate = e.partial();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_thresholds_csv(std::ostream& out, const std::vector<ThresholdRow>& rows) {
  csv::write_row(out, {"schema_version", "experiment_id", "ensemble", "n", "N", "density",
                       "algorithm", "t", "r_hat", "k0", "k1", "k2", "ceiling_reached",
                       "k1_equals_k2"});
  for (const ThresholdRow& r : rows) {
    const ThresholdEstimate& e = r.estimate;
    csv::write_row(out, {std::to_string(kCsvSchemaVersion), r.experiment_id,
                         std::string(to_string(r.ensemble)), num(r.n), num(r.N), num(r.density),
                         std::string(to_string(r.algorithm)), num(e.t), num(e.r_hat), num(e.k0),
                         num(e.k1), num(e.k2), e.ceiling_reached ? "1" : "0",
                         e.k1_equals_k2() ? "1" : "0"});
  }
}

std::vector<ThresholdRow> read_thresholds_csv(std::istream& in) {
  CsvTable table(in);
  std::vector<ThresholdRow> rows;
  for (std::size_t i = 0; i < table.size(); ++i) {
    ThresholdRow r;
    r.experiment_id = table.get(i, "experiment_id");
    r.ensemble = parse_ensemble_kind(table.get(i, "ensemble"));
    r.n = table.count(i, "n");
    r.N = table.count(i, "N");
    r.density = table.real(i, "density");
    r.algorithm = parse_algorithm(table.get(i, "algorithm"));
    r.estimate.t = table.real(i, "t");
    r.estimate.r_hat = table.count(i, "r_hat");
    r.estimate.k0 = table.count(i, "k0");
    r.estimate.k1 = table.count(i, "k1");
    r.estimate.k2 = table.count(i, "k2");
    r.estimate.ceiling_reached = table.get(i, "ceiling_reached") == "1";
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_sweep_outputs(const ExperimentConfig& cfg, const SweepResult& result) {
  std::filesystem::create_directories(cfg.output);
  {
    auto out = open_output(cfg.output / "trials.csv");
    write_trials_csv(out, result.trials, cfg.record_wall_time);
  }
  auto out = open_output(cfg.output / "summary.csv");
  write_summary_csv(out, result.summary);
}

void write_threshold_outputs(const ExperimentConfig& cfg, const std::vector<ThresholdRow>& rows) {
  std::filesystem::create_directories(cfg.output);
  {
    auto out = open_output(cfg.output / "thresholds.csv");
    write_thresholds_csv(out, rows);
  }
  for (const ThresholdRow& r : rows) {
    auto out = open_output(cfg.output / ("trace_" + density_tag(r.density) + "_" +
                                         std::string(to_string(r.algorithm)) + ".csv"));
    write_trace_csv(out, r.estimate);
  }
}

// ---------------------------------------------------------------- report

namespace {

// series label -> sorted (x, y) points
using SeriesMap = std::map<std::string, std::vector<std::pair<double, double>>>;

void write_series(const std::filesystem::path& path, SeriesMap& series, ReportStats& stats) {
  auto out = open_output(path);
  out << "series\tx\ty\n";
  for (auto& [label, points] : series) {
    std::stable_sort(points.begin(), points.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [x, y] : points)
      out << label << '\t' << csv::format_double(x) << '\t' << csv::format_double(y) << '\n';
    stats.points += points.size();
  }
  stats.series += series.size();
  stats.files.push_back(path.string());
}

}  // namespace

ReportStats report(const std::vector<std::filesystem::path>& inputs,
                   const std::filesystem::path& out_dir) {
  ReportStats stats;
  SeriesMap success_vs_k, rhat_vs_density, rhat_vs_n;
  for (const auto& path : inputs) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read input " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::istringstream peek(buffer.str());
    CsvTable table(peek);
    if (table.size() == 0) {
      stats.warnings.push_back(path.string() + " holds no data rows");
      continue;
    }
    std::istringstream body(buffer.str());
    if (table.has("r_hat")) {
      for (const ThresholdRow& r : read_thresholds_csv(body)) {
        const std::string algo(to_string(r.algorithm));
        const std::string ens(to_string(r.ensemble));
        const auto y = static_cast<double>(r.estimate.r_hat);
        rhat_vs_density[ens + "/" + algo + "/n=" + std::to_string(r.n)].emplace_back(r.density, y);
        rhat_vs_n[ens + "/" + algo + "/density=" + csv::format_double(r.density)].emplace_back(
            static_cast<double>(r.n), y);
      }
    } else if (table.has("success_rate")) {
      for (const SummaryRow& s : read_summary_csv(body)) {
        success_vs_k[std::string(to_string(s.ensemble)) + "/" + std::string(to_string(s.algorithm)) +
                     "/n=" + std::to_string(s.n) + "/density=" + csv::format_double(s.density)]
            .emplace_back(static_cast<double>(s.k), s.success_rate());
      }
    } else {
      throw std::runtime_error(path.string() + " is neither a summary nor a thresholds CSV");
    }
  }
  std::filesystem::create_directories(out_dir);
  write_series(out_dir / "success_vs_k.tsv", success_vs_k, stats);
  write_series(out_dir / "rhat_vs_density.tsv", rhat_vs_density, stats);
  write_series(out_dir / "rhat_vs_n.tsv", rhat_vs_n, stats);
  if (stats.points == 0) stats.warnings.push_back("no data points; series files are empty");
  return stats;
}

}  // namespace sparse_sense
