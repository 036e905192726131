#include "sparse_sense/outcome.hpp"

#include <limits>

#include "sparse_sense/siggen.hpp"

namespace sparse_sense {

std::string_view to_string(HaltReason reason) {
  switch (reason) {
    case HaltReason::Tolerance: return "tol";
    case HaltReason::Stagnation: return "stagnation";
    case HaltReason::MaxIterations: return "max_iters";
    case HaltReason::SparsityReached: return "k_rounds";
    case HaltReason::Optimal: return "optimal";
    case HaltReason::Infeasible: return "infeasible";
    case HaltReason::IterationLimit: return "iteration_limit";
    case HaltReason::NumericalFailure: return "numerical_failure";
    case HaltReason::Error: return "error";
  }
  return "?";
}

RecoveryOutcome::RecoveryOutcome(RecoveryEstimate estimate, std::span<const double> truth,
                                 double wall_time_s)
    : xhat_(std::move(estimate.xhat)),
      l1_error_(l1_distance(truth, xhat_)),
      iterations_(estimate.iterations),
      wall_time_s_(wall_time_s),
      halt_(estimate.halt),
      rank_deficient_(estimate.rank_deficient) {
  success_ = l1_error_ <= kSuccessTolerance;
}

RecoveryOutcome RecoveryOutcome::failed(std::string error_tag, double wall_time_s) {
  RecoveryOutcome out;
  out.l1_error_ = std::numeric_limits<double>::infinity();
  out.success_ = false;
  out.wall_time_s_ = wall_time_s;
  out.halt_ = HaltReason::Error;
  out.error_tag_ = std::move(error_tag);
  return out;
}

}  // namespace sparse_sense
