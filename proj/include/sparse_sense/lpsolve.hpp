#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "sparse_sense/outcome.hpp"
#include "sparse_sense/sensing_matrix.hpp"

namespace sparse_sense {

// Revised simplex for   min 1^T x   subject to   A x = y,  x >= 0.
//
// Two phases over a dense LU-factorised basis with product-form (eta)
// updates. Phase 1 starts from the all-artificial basis after flipping rows
// so that y >= 0 and minimises the artificial sum; basic artificials left at
// zero are pivoted out where possible, the rest mark redundant rows. Pricing
// is Dantzig over a rotating window of columns; after `bland_after`
// consecutive degenerate pivots the solver switches to Bland's smallest-index
// rule until the next non-degenerate step.

struct LpOptions {
  std::size_t max_iters = 0;  // 0: 50 * (n + N)
  double feas_tol = 1e-8;     // relative to max(1, ||y||_inf)
  double rc_tol = 1e-9;
  double pivot_tol = 1e-10;
  std::size_t pricing_window = 200;  // clamped to N
  std::size_t refactor_interval = 100;
  std::size_t bland_after = 50;
};

enum class LpStatus { Optimal, Infeasible, IterationLimit, NumericalFailure };

std::string_view to_string(LpStatus status);

struct LpSolution {
  std::vector<double> x;  // length N
  double objective = 0.0;
  LpStatus status = LpStatus::IterationLimit;
  std::size_t iterations = 0;
  std::size_t phase1_iterations = 0;
  double wall_time_s = 0.0;

  /// Structural indices in the final basis (redundant rows excluded).
  std::vector<std::size_t> basis;
  /// Row multipliers pi of the final basis for the original rows:
  /// reduced cost of column j is 1 - pi^T a_j.
  std::vector<double> duals;
  double min_reduced_cost = 0.0;
  double max_residual = 0.0;  // ||A x - y||_inf
  double min_x = 0.0;
};

/// Throws DimensionError when y does not have A.rows() entries.
LpSolution solve(const SensingMatrix& a, std::span<const double> y, const LpOptions& opts = {});

/// l1 recovery of a nonnegative signal from y = Phi x.
RecoveryEstimate recover_l1(const SensingMatrix& phi, std::span<const double> y,
                            const LpOptions& opts = {});

}  // namespace sparse_sense
