#include "sparse_sense/recover.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "sparse_sense/error.hpp"
#include "sparse_sense/numkit.hpp"

namespace sparse_sense {

namespace {

// Indices of the `count` largest |v| (lowest index first among equals),
// skipping exact zeros, in ascending index order.
std::vector<std::size_t> largest_magnitudes(std::span<const double> v, std::size_t count) {
  std::vector<std::size_t> idx;
  idx.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) idx.push_back(i);
  }
  if (idx.size() > count) {
    auto before = [&](std::size_t a, std::size_t b) {
      const double fa = std::fabs(v[a]), fb = std::fabs(v[b]);
      return fa > fb || (fa == fb && a < b);
    };
    std::nth_element(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(count), idx.end(), before);
    idx.resize(count);
  }
  std::sort(idx.begin(), idx.end());
  return idx;
}

void check_shapes(const SensingMatrix& phi, std::span<const double> y, const GreedyOpts& opts) {
  if (y.size() != phi.rows()) throw DimensionError("measurement length differs from row count");
  if (opts.k < 1) throw ParameterError("greedy recovery needs k >= 1");
}

}  // namespace

RecoveryEstimate omp(const SensingMatrix& phi, std::span<const double> y, const GreedyOpts& opts) {
  check_shapes(phi, y, opts);
  const std::size_t N = phi.cols();
  RecoveryEstimate est;
  est.xhat.assign(N, 0.0);
  const double ynorm = l2_norm(y);
  const double tol = opts.residual_tol * ynorm;
  est.halt = HaltReason::SparsityReached;
  if (ynorm == 0.0) {
    est.halt = HaltReason::Tolerance;
    return est;
  }

  std::vector<double> residual(y.begin(), y.end());
  std::vector<double> proxy(N);
  std::vector<char> selected(N, 0);
  std::vector<std::size_t> support;
  LeastSquaresResult fit;
  const std::size_t rounds = std::min({opts.k, N, phi.rows()});
  for (std::size_t it = 0; it < rounds; ++it) {
    phi.rmatvec(residual, proxy);
    std::size_t best = N;
    double best_abs = -1.0;
    for (std::size_t j = 0; j < N; ++j) {
      if (selected[j]) continue;
      const double a = std::fabs(proxy[j]);
      if (a > best_abs) {
        best_abs = a;
        best = j;
      }
    }
    selected[best] = 1;
    support.push_back(best);
    fit = lstsq_on_support(phi, support, y);
    residual = fit.residual;
    est.rank_deficient = est.rank_deficient || fit.rank_deficient;
    est.iterations = it + 1;
    if (fit.residual_norm <= tol) {
      est.halt = HaltReason::Tolerance;
      break;
    }
  }
  for (std::size_t q = 0; q < support.size(); ++q) est.xhat[support[q]] = fit.coefficients[q];
  return est;
}

RecoveryEstimate cosamp(const SensingMatrix& phi, std::span<const double> y,
                        const GreedyOpts& opts) {
  check_shapes(phi, y, opts);
  const std::size_t N = phi.cols();
  const std::size_t k = opts.k;
  RecoveryEstimate est;
  est.xhat.assign(N, 0.0);
  const double ynorm = l2_norm(y);
  const double tol = opts.residual_tol * ynorm;
  est.halt = HaltReason::MaxIterations;
  if (ynorm == 0.0) {
    est.halt = HaltReason::Tolerance;
    return est;
  }

  std::vector<double> residual(y.begin(), y.end());
  std::vector<double> proxy(N);
  std::vector<std::size_t> support;
  std::vector<std::size_t> merged;
  double previous = ynorm;
  int stalled = 0;
  for (std::size_t it = 0; it < opts.max_iters; ++it) {
    phi.rmatvec(residual, proxy);
    const auto omega = largest_magnitudes(proxy, 2 * k);
    merged.clear();
    std::set_union(omega.begin(), omega.end(), support.begin(), support.end(),
                   std::back_inserter(merged));
    const LeastSquaresResult fit = lstsq_on_support(phi, merged, y);
    est.rank_deficient = est.rank_deficient || fit.rank_deficient;

    const auto keep = largest_magnitudes(fit.coefficients, k);
    std::fill(est.xhat.begin(), est.xhat.end(), 0.0);
    support.clear();
    for (std::size_t q : keep) {
      support.push_back(merged[q]);
      est.xhat[merged[q]] = fit.coefficients[q];
    }
    std::sort(support.begin(), support.end());

    phi.matvec(est.xhat, residual);
    for (std::size_t i = 0; i < residual.size(); ++i) residual[i] = y[i] - residual[i];
    const double rnorm = l2_norm(residual);
    est.iterations = it + 1;
    if (rnorm <= tol) {
      est.halt = HaltReason::Tolerance;
      break;
    }
    if (opts.stagnation_window > 0 && rnorm > previous * (1.0 - opts.stagnation_rel)) {
      if (++stalled >= opts.stagnation_window) {
        est.halt = HaltReason::Stagnation;
        break;
      }
    } else {
      stalled = 0;
    }
    previous = rnorm;
  }
  return est;
}

std::string_view to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::LP: return "lp";
    case Algorithm::OMP: return "omp";
    case Algorithm::CoSaMP: return "cosamp";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "lp") return Algorithm::LP;
  if (name == "omp") return Algorithm::OMP;
  if (name == "cosamp") return Algorithm::CoSaMP;
  throw ParameterError("unknown algorithm '" + std::string(name) + "' (expected lp, omp or cosamp)");
}

RecoveryOutcome run_trial(const SensingMatrix& phi, const SparseSignal& x, Algorithm algo,
                          const TrialOptions& opts) {
  if (x.size() != phi.cols()) throw DimensionError("signal length differs from column count");
  const auto truth = x.dense();
  std::vector<double> y(phi.rows());
  phi.matvec(truth, y);

  GreedyOpts greedy = opts.greedy;
  greedy.k = x.sparsity();
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  try {
    RecoveryEstimate est;
    switch (algo) {
      case Algorithm::LP: est = recover_l1(phi, y, opts.lp); break;
      case Algorithm::OMP: est = omp(phi, y, greedy); break;
      case Algorithm::CoSaMP: est = cosamp(phi, y, greedy); break;
    }
    const double wall = elapsed();
    return RecoveryOutcome(std::move(est), truth, wall);
  } catch (const std::exception& e) {
    return RecoveryOutcome::failed(e.what(), elapsed());
  }
}

}  // namespace sparse_sense
