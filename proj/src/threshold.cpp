#include "sparse_sense/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>
#include <ostream>
#include <string>

#include "sparse_sense/csv.hpp"
#include "sparse_sense/error.hpp"

namespace sparse_sense {

namespace {

constexpr std::size_t kEarlyStopBatch = 25;

// Runs oracle(k, first + i) for i in [begin, end) on `workers` threads and
// returns the number of successes.
std::size_t run_batch(const TrialOracle& oracle, std::size_t k, std::size_t first,
                      std::size_t begin, std::size_t end, int workers) {
  std::vector<char> ok(end - begin, 0);
  std::exception_ptr error;
  const auto count = static_cast<std::int64_t>(end - begin);
#pragma omp parallel for num_threads(workers) schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      ok[static_cast<std::size_t>(i)] = oracle(k, first + begin + static_cast<std::size_t>(i)) ? 1 : 0;
    } catch (...) {
#pragma omp critical(sparse_sense_threshold_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1));
}

TraceEntry run_sparsity(const TrialOracle& oracle, std::size_t k, std::size_t stage, double t,
                        const ThresholdOptions& opts) {
  TraceEntry e;
  e.k = k;
  e.stage_trials = kStageTrials[stage];
  const std::size_t need = required_successes(e.stage_trials, t);
  const std::size_t first = kStageIndexOffset[stage];
  const int workers = std::max(1, opts.workers);
  if (!opts.early_stop) {
    e.successes = run_batch(oracle, k, first, 0, e.stage_trials, workers);
    e.trials = e.stage_trials;
  } else {
    while (e.trials < e.stage_trials) {
      const std::size_t end = std::min(e.stage_trials, e.trials + kEarlyStopBatch);
      e.successes += run_batch(oracle, k, first, e.trials, end, workers);
      e.trials = end;
      const std::size_t failures = e.trials - e.successes;
      if (e.successes >= need || failures > e.stage_trials - need) break;
    }
  }
  e.passed = e.successes >= need;
  return e;
}

}  // namespace

CeilingReachedError::CeilingReachedError(ThresholdEstimate partial)
    : std::runtime_error("every sparsity up to the ceiling " + std::to_string(partial.r_hat) +
                         " passed; r_hat >= ceiling"),
      partial_(std::move(partial)) {}

std::size_t required_successes(std::size_t trials, double t) {
  // The guard keeps products such as 50 * 0.98 from rounding up past 49.
  const double target = static_cast<double>(trials) * t;
  return static_cast<std::size_t>(std::ceil(target - 1e-9 * static_cast<double>(trials)));
}

ThresholdEstimate estimate(const TrialOracle& oracle, double t, const ThresholdOptions& opts) {
  if (!(t > 0.0 && t < 1.0)) throw ParameterError("threshold probability t must lie in (0, 1)");
  if (opts.k_ceiling < 1) throw ParameterError("threshold scan needs a k ceiling >= 1");

  ThresholdEstimate est;
  est.t = t;
  std::size_t start = 1;
  std::array<std::size_t*, 3> failing{&est.k0, &est.k1, &est.k2};
  for (std::size_t stage = 0; stage < kStageTrials.size(); ++stage) {
    std::size_t k = start;
    for (;;) {
      if (k > opts.k_ceiling) {
        est.ceiling_reached = true;
        est.r_hat = opts.k_ceiling;
        throw CeilingReachedError(std::move(est));
      }
      TraceEntry e = run_sparsity(oracle, k, stage, t, opts);
      est.trace.push_back(e);
      if (!e.passed) break;
      ++k;
    }
    *failing[stage] = k;
    start = k > kStageBacktrack ? k - kStageBacktrack : 1;
  }
  est.r_hat = est.k2 - 1;
  return est;
}

ThresholdEstimate estimate_for_matrix(const MatrixSource& source, Algorithm algo, double t,
                                      Seed seed, ThresholdOptions opts,
                                      const TrialOptions& trial_opts) {
  source.ensemble.validate();
  const std::size_t N = source.ensemble.N;
  if (opts.k_ceiling == 0) opts.k_ceiling = source.ensemble.n;
  opts.k_ceiling = std::min(opts.k_ceiling, N);

  std::optional<SensingMatrix> fixed;
  if (source.mode == MatrixMode::Fixed) fixed = source.draw(derive(seed, StreamTag::Matrix));

  TrialOracle oracle = [&](std::size_t k, std::size_t trial) {
    const Seed ts = trial_seed(seed, k, trial);
    try {
      std::optional<SensingMatrix> fresh;
      if (!fixed) fresh = source.draw(ts);
      const SensingMatrix& phi = fixed ? *fixed : *fresh;
      const SparseSignal x = sample_signal({N, k, source.signal_dist}, derive(ts, StreamTag::Signal));
      return run_trial(phi, x, algo, trial_opts).success();
    } catch (const std::exception&) {
      return false;
    }
  };
  return estimate(oracle, t, opts);
}

void write_trace_csv(std::ostream& out, const ThresholdEstimate& est) {
  csv::write_row(out, {"k", "stage", "trials", "successes"});
  for (const TraceEntry& e : est.trace) {
    csv::write_row(out, {std::to_string(e.k), std::to_string(e.stage_trials),
                         std::to_string(e.trials), std::to_string(e.successes)});
  }
}

}  // namespace sparse_sense
