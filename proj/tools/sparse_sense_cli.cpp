// Command-line front end: gen, sparsify, trials, threshold, report.
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sparse_sense/bench.hpp"
#include "sparse_sense/csv.hpp"
#include "sparse_sense/matgen.hpp"
#include "sparse_sense/sparsifier.hpp"

namespace fs = std::filesystem;
using namespace sparse_sense;

namespace {

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  int workers = 0;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool needs_config) {
  auto* opt = cmd->add_option("--config", f.config, "Experiment config (JSON)");
  if (needs_config) opt->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "Master seed, overrides the config");
  cmd->add_option("--out", f.out, "Output directory, overrides the config");
  cmd->add_option("--workers", f.workers, "Worker threads (default: $SPARSE_SENSE_WORKERS)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--quiet", f.quiet, "Suppress progress output");
}

ExperimentConfig load(const CommonFlags& f) {
  ExperimentConfig cfg = load_config(f.config);
  if (f.seed) cfg.seed = *f.seed;
  if (!f.out.empty()) cfg.output = f.out;
  return cfg;
}

std::ofstream open_file(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::string density_tag(double density) {
  std::string s = csv::format_double(density);
  std::replace(s.begin(), s.end(), '.', 'p');
  return s;
}

void cmd_gen(const CommonFlags& f) {
  const ExperimentConfig cfg = load(f);
  const DenseMatrix m = generate(cfg.ensemble, derive(Seed{cfg.seed}, StreamTag::Matrix));
  fs::create_directories(cfg.output);
  const fs::path path = cfg.output / "matrix.csv";
  auto out = open_file(path);
  std::vector<std::string> row(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) row[j] = csv::format_double(m(i, j));
    csv::write_row(out, row);
  }
  if (!f.quiet)
    std::cout << "wrote " << path.string() << " (" << m.rows() << "x" << m.cols()
              << ", density " << density(m) << ")\n";
}

void cmd_sparsify(const CommonFlags& f) {
  const ExperimentConfig cfg = load(f);
  const Seed seed{cfg.seed};
  const DenseMatrix base = generate(cfg.ensemble, derive(seed, StreamTag::Matrix));
  fs::create_directories(cfg.output);
  for (double s : cfg.densities) {
    const std::size_t t = ones_for_density(s, base.rows());
    Mask mask = make_mask(base.rows(), base.cols(), t, derive(seed, StreamTag::Mask));
    const SparsifiedMatrix sp = apply(base, std::move(mask), cfg.renormalize);
    const fs::path path = cfg.output / ("sparsified_" + density_tag(s) + ".txt");
    auto out = open_file(path);
    write_text(out, sp);
    if (!f.quiet)
      std::cout << "wrote " << path.string() << " (t=" << t << ", density " << sp.density()
                << ", relative " << relative_density(sp, base) << ", resampled columns "
                << sp.resampled_columns() << ")\n";
  }
}

void cmd_trials(const CommonFlags& f) {
  const ExperimentConfig cfg = load(f);
  const SweepResult result = run_sweep(cfg, resolve_workers(f.workers));
  write_sweep_outputs(cfg, result);
  if (f.quiet) return;
  for (const SummaryRow& r : result.summary)
    std::cout << to_string(r.algorithm) << " density=" << r.density << " k=" << r.k << "  "
              << r.successes << "/" << r.trials << "  mean " << r.mean_wall_time_s << " s\n";
  std::cout << "wrote " << (cfg.output / "trials.csv").string() << " and summary.csv\n";
}

void cmd_threshold(const CommonFlags& f) {
  const ExperimentConfig cfg = load(f);
  const auto rows = run_threshold(cfg, resolve_workers(f.workers));
  write_threshold_outputs(cfg, rows);
  if (f.quiet) return;
  for (const ThresholdRow& r : rows) {
    const ThresholdEstimate& e = r.estimate;
    std::cout << to_string(r.algorithm) << " density=" << r.density << "  r_hat="
              << (e.ceiling_reached ? ">=" : "") << e.r_hat << "  k0=" << e.k0
              << " k1=" << e.k1 << " k2=" << e.k2 << "\n";
  }
  std::cout << "wrote " << (cfg.output / "thresholds.csv").string() << "\n";
}

void cmd_report(const std::vector<std::string>& inputs, const CommonFlags& f) {
  std::vector<fs::path> paths(inputs.begin(), inputs.end());
  const ReportStats stats = report(paths, f.out.empty() ? fs::path("plots") : fs::path(f.out));
  for (const auto& w : stats.warnings) std::cerr << "warning: " << w << "\n";
  if (!f.quiet)
    std::cout << stats.series << " series, " << stats.points << " points in "
              << stats.files.size() << " files\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse sensing matrix experiments"};
  app.require_subcommand(1);

  CommonFlags gen_f, sp_f, tr_f, th_f, rep_f;
  std::vector<std::string> report_inputs;

  auto* gen = app.add_subcommand("gen", "Draw one matrix from the configured ensemble");
  add_common(gen, gen_f, true);
  auto* sparsify = app.add_subcommand("sparsify", "Mask and renormalise a drawn matrix");
  add_common(sparsify, sp_f, true);
  auto* trials = app.add_subcommand("trials", "Run the recovery sweep");
  add_common(trials, tr_f, true);
  auto* threshold = app.add_subcommand("threshold", "Estimate recovery thresholds");
  add_common(threshold, th_f, true);
  auto* rep = app.add_subcommand("report", "Turn summary/threshold CSVs into plot series");
  add_common(rep, rep_f, false);
  rep->add_option("inputs", report_inputs, "summary.csv / thresholds.csv files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*gen) cmd_gen(gen_f);
    else if (*sparsify) cmd_sparsify(sp_f);
    else if (*trials) cmd_trials(tr_f);
    else if (*threshold) cmd_threshold(th_f);
    else if (*rep) cmd_report(report_inputs, rep_f);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
