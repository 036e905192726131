#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sparse_sense {

/// Recovery succeeds when the l1 distance to the true signal is at most this.
inline constexpr double kSuccessTolerance = 1e-6;

enum class HaltReason {
  Tolerance,      // residual below residual_tol
  Stagnation,     // residual stopped decreasing
  MaxIterations,  // iteration cap
  SparsityReached,  // OMP ran its k rounds
  Optimal,        // LP optimum
  Infeasible,
  IterationLimit,
  NumericalFailure,
  Error,          // exception raised inside the trial
};

std::string_view to_string(HaltReason reason);

/// What a recovery algorithm returns before anyone compares it to the truth.
struct RecoveryEstimate {
  std::vector<double> xhat;
  std::size_t iterations = 0;
  HaltReason halt = HaltReason::MaxIterations;
  bool rank_deficient = false;
};

/// Estimate scored against the held signal. The success flag is derived from
/// the l1 error at construction, never set independently.
class RecoveryOutcome {
 public:
  RecoveryOutcome(RecoveryEstimate estimate, std::span<const double> truth, double wall_time_s);

  /// A trial that raised instead of returning; counted as a failure.
  static RecoveryOutcome failed(std::string error_tag, double wall_time_s);

  std::span<const double> xhat() const noexcept { return xhat_; }
  bool success() const noexcept { return success_; }
  double l1_error() const noexcept { return l1_error_; }
  std::size_t iterations() const noexcept { return iterations_; }
  double wall_time_s() const noexcept { return wall_time_s_; }
  HaltReason halt() const noexcept { return halt_; }
  bool rank_deficient() const noexcept { return rank_deficient_; }
  const std::string& error_tag() const noexcept { return error_tag_; }

 private:
  RecoveryOutcome() = default;

  std::vector<double> xhat_;
  bool success_ = false;
  double l1_error_ = 0.0;
  std::size_t iterations_ = 0;
  double wall_time_s_ = 0.0;
  HaltReason halt_ = HaltReason::Error;
  bool rank_deficient_ = false;
  std::string error_tag_;
};

}  // namespace sparse_sense
