#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "sparse_sense/recover.hpp"
#include "sparse_sense/source.hpp"

namespace sparse_sense {

/// Trials per sparsity at each of the three scan stages.
inline constexpr std::array<std::size_t, 3> kStageTrials{50, 200, 1000};

/// Trial indices handed to the oracle start here for each stage, so the
/// three stages never reuse a (k, index) pair.
inline constexpr std::array<std::size_t, 3> kStageIndexOffset{0, 50, 250};

/// Each stage after the first restarts this many sparsities below the
/// previous stage's failing k (clamped to 1).
inline constexpr std::size_t kStageBacktrack = 3;

struct TraceEntry {
  std::size_t k = 0;
  std::size_t stage_trials = 0;  // 50, 200 or 1000
  std::size_t trials = 0;        // attempted (fewer than stage_trials with early stop)
  std::size_t successes = 0;
  bool passed = false;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct ThresholdEstimate {
  double t = 0.0;
  std::size_t r_hat = 0;
  std::size_t k0 = 0;
  std::size_t k1 = 0;
  std::size_t k2 = 0;
  bool ceiling_reached = false;
  std::vector<TraceEntry> trace;

  bool k1_equals_k2() const { return k1 == k2; }

  friend bool operator==(const ThresholdEstimate&, const ThresholdEstimate&) = default;
};

/// Raised when the scan passes every k up to the ceiling; `partial().r_hat`
/// holds the ceiling as a lower bound.
class CeilingReachedError : public std::runtime_error {
 public:
  explicit CeilingReachedError(ThresholdEstimate partial);
  const ThresholdEstimate& partial() const noexcept { return partial_; }

 private:
  ThresholdEstimate partial_;
};

struct ThresholdOptions {
  std::size_t k_ceiling = 0;  // largest k tried; 0 means "use n" where n is known
  int workers = 1;
  /// Stop a sparsity's trials once its pass/fail decision is fixed. The
  /// decisions and r_hat are unchanged; trace trial counts shrink.
  bool early_stop = false;
};

/// Successes needed out of `trials` for the probability to count as
/// exceeding t: ceil(trials * t).
std::size_t required_successes(std::size_t trials, double t);

/// Deterministic in (k, trial index); must be safe to call concurrently.
using TrialOracle = std::function<bool(std::size_t k, std::size_t trial)>;

/// Three-stage linear scan: 50 trials per k from k = 1 up to the first
/// failing k0; 200 per k from max(1, k0 - 3) to the first failing k1; 1000
/// per k from max(1, k1 - 3) to the first failing k2; r_hat = k2 - 1.
ThresholdEstimate estimate(const TrialOracle& oracle, double t, const ThresholdOptions& opts);

/// Builds the oracle from the matrix source, signal sampler and recovery
/// algorithm with per-(k, trial) seeds, then runs estimate(). The ceiling
/// defaults to the row count.
ThresholdEstimate estimate_for_matrix(const MatrixSource& source, Algorithm algo, double t,
                                      Seed seed, ThresholdOptions opts,
                                      const TrialOptions& trial_opts = {});

/// CSV with header "k,stage,trials,successes".
void write_trace_csv(std::ostream& out, const ThresholdEstimate& est);

}  // namespace sparse_sense
