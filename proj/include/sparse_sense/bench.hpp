#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "sparse_sense/recover.hpp"
#include "sparse_sense/source.hpp"
#include "sparse_sense/threshold.hpp"

namespace sparse_sense {

inline constexpr int kCsvSchemaVersion = 1;

/// Raised for malformed or inconsistent experiment configs (exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string experiment_id = "experiment";
  EnsembleSpec ensemble;
  std::vector<double> densities{1.0};
  std::vector<Algorithm> algorithms{Algorithm::LP};
  std::size_t k_min = 1;
  std::size_t k_max = 1;
  std::size_t k_step = 1;
  std::vector<std::size_t> k_values;  // overrides the range when non-empty
  std::size_t trials = 1;
  double t = 0.98;
  std::uint64_t seed = 0;
  MatrixMode matrix_mode = MatrixMode::Fresh;
  SignalDist signal_dist = SignalDist::Uniform01;
  bool renormalize = true;
  bool record_wall_time = true;
  std::filesystem::path output = "out";
  TrialOptions trial;
  ThresholdOptions threshold;

  /// The sparsities of the sweep, ascending.
  std::vector<std::size_t> sparsities() const;

  /// Throws ConfigError when the invariants do not hold.
  void validate() const;
};

/// Parses a JSON config; unknown keys are rejected.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

struct TrialRecord {
  std::string experiment_id;
  EnsembleKind ensemble = EnsembleKind::AbsNormal;
  std::size_t n = 0;
  std::size_t N = 0;
  double density = 1.0;
  Algorithm algorithm = Algorithm::LP;
  std::size_t k = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  bool success = false;
  double l1_error = 0.0;
  double wall_time_s = 0.0;
  std::size_t iterations = 0;
  std::string halt;
};

struct SummaryRow {
  std::string experiment_id;
  EnsembleKind ensemble = EnsembleKind::AbsNormal;
  std::size_t n = 0;
  std::size_t N = 0;
  double density = 1.0;
  Algorithm algorithm = Algorithm::LP;
  std::size_t k = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double mean_wall_time_s = 0.0;

  double success_rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
  }
};

struct SweepResult {
  std::vector<TrialRecord> trials;  // ordered by density, algorithm, k, trial
  std::vector<SummaryRow> summary;  // one row per (density, algorithm, k)
};

/// Runs the full density x algorithm x k x trial grid on `workers` threads.
/// Output order and every non-timing field are independent of `workers`.
SweepResult run_sweep(const ExperimentConfig& cfg, int workers);

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& rows,
                      bool record_wall_time = true);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary_csv(std::istream& in);

struct ThresholdRow {
  std::string experiment_id;
  EnsembleKind ensemble = EnsembleKind::AbsNormal;
  std::size_t n = 0;
  std::size_t N = 0;
  double density = 1.0;
  Algorithm algorithm = Algorithm::LP;
  ThresholdEstimate estimate;
};

/// One threshold estimate per (density, algorithm).
std::vector<ThresholdRow> run_threshold(const ExperimentConfig& cfg, int workers);

void write_thresholds_csv(std::ostream& out, const std::vector<ThresholdRow>& rows);
std::vector<ThresholdRow> read_thresholds_csv(std::istream& in);

/// Writes trials.csv + summary.csv into cfg.output.
void write_sweep_outputs(const ExperimentConfig& cfg, const SweepResult& result);
/// Writes thresholds.csv + one trace_<density>_<algo>.csv per estimate.
void write_threshold_outputs(const ExperimentConfig& cfg, const std::vector<ThresholdRow>& rows);

struct ReportStats {
  std::size_t series = 0;
  std::size_t points = 0;
  std::vector<std::string> files;
  std::vector<std::string> warnings;
};

/// Turns summary and threshold CSVs into tab-separated plot series:
///   success_vs_k.tsv     x = k, y = success rate, per (algorithm, density)
///   rhat_vs_density.tsv  x = density, y = r_hat, per (algorithm, n)
///   rhat_vs_n.tsv        x = n, y = r_hat, per (algorithm, density)
ReportStats report(const std::vector<std::filesystem::path>& inputs,
                   const std::filesystem::path& out_dir);

/// Worker count: explicit value if > 0, else $SPARSE_SENSE_WORKERS, else
/// the OpenMP default.
int resolve_workers(int requested);

}  // namespace sparse_sense
