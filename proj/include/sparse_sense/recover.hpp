#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "sparse_sense/lpsolve.hpp"
#include "sparse_sense/outcome.hpp"
#include "sparse_sense/sensing_matrix.hpp"
#include "sparse_sense/siggen.hpp"

namespace sparse_sense {

struct GreedyOpts {
  std::size_t k = 1;            // sparsity supplied to the algorithm
  std::size_t max_iters = 100;  // CoSaMP iteration cap
  double residual_tol = 1e-7;   // relative to ||y||_2
  int stagnation_window = 0;    // CoSaMP: halt after this many consecutive
                                // non-improving iterations; 0 disables
  double stagnation_rel = 1e-7;
};

/// k rounds of greedy column selection (largest |A^T r|, lowest index on
/// ties), each followed by least squares on the accumulated support. Stops
/// early once ||r|| <= residual_tol * ||y||.
RecoveryEstimate omp(const SensingMatrix& phi, std::span<const double> y, const GreedyOpts& opts);

/// Needell-Tropp CoSaMP: proxy A^T r, merge its 2k largest entries with the
/// current support, least squares on the merged set, keep the k largest
/// coefficients, update the residual. Halts on tolerance or the iteration
/// cap, and on stagnation when opts.stagnation_window > 0.
RecoveryEstimate cosamp(const SensingMatrix& phi, std::span<const double> y,
                        const GreedyOpts& opts);

enum class Algorithm { LP, OMP, CoSaMP };

std::string_view to_string(Algorithm algo);
Algorithm parse_algorithm(std::string_view name);

struct TrialOptions {
  LpOptions lp;
  GreedyOpts greedy;  // k is taken from the signal
};

/// y = Phi x, recover with `algo`, score against x. Wall time covers the
/// recovery call only. Exceptions become failed outcomes tagged with the
/// exception message.
RecoveryOutcome run_trial(const SensingMatrix& phi, const SparseSignal& x, Algorithm algo,
                          const TrialOptions& opts = {});

}  // namespace sparse_sense
