#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "sparse_sense/error.hpp"
#include "sparse_sense/matgen.hpp"
#include "sparse_sense/numkit.hpp"
#include "sparse_sense/recover.hpp"
#include "sparse_sense/rng.hpp"
#include "sparse_sense/source.hpp"
#include "support/oracles.hpp"

using namespace sparse_sense;

namespace {

std::vector<double> measure(const SensingMatrix& phi, const SparseSignal& x) {
  std::vector<double> y(phi.rows());
  phi.matvec(x.dense(), y);
  return y;
}

std::size_t nonzeros(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](double a) { return a != 0.0; }));
}

}  // namespace

TEST_CASE("greedy recovery is exact on the identity and orthonormal columns") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const std::size_t N = 10 + s % 40;
    const std::size_t k = 1 + s % 8;
    const SparseSignal x = sample_signal({N, k, SignalDist::Uniform01}, Seed{s});
    const SensingMatrix id(DenseMatrix::identity(N));
    const SensingMatrix q(oracle::orthonormal_columns(N + 5, N, Seed{s + 500}));
    for (const SensingMatrix* phi : {&id, &q}) {
      for (Algorithm algo : {Algorithm::OMP, Algorithm::CoSaMP}) {
        const RecoveryOutcome o = run_trial(*phi, x, algo);
        CHECK(o.success());
        CHECK(o.l1_error() <= 1e-10);
      }
    }
    GreedyOpts opts;
    opts.k = k;
    const auto y = measure(id, x);
    CHECK(omp(id, y, opts).iterations <= k);
    CHECK(cosamp(id, y, opts).iterations == 1);
  }
}

TEST_CASE("OMP picks the true column of a one-sparse signal first") {
  const SensingMatrix phi = MatrixSource{{EnsembleKind::AbsNormal, 30, 90}}.draw(Seed{3});
  for (std::size_t j = 0; j < 90; j += 7) {
    const SparseSignal x(90, {j}, {1.0});
    GreedyOpts opts;
    opts.k = 1;
    const RecoveryEstimate e = omp(phi, measure(phi, x), opts);
    CHECK(nonzeros(e.xhat) == 1);
    CHECK(e.xhat[j] == doctest::Approx(1.0));
  }
}

TEST_CASE("OMP residual is orthogonal to its support and picks distinct columns") {
  MatrixSource src;
  src.ensemble = {EnsembleKind::PartialCirculant, 60, 300};
  for (std::uint64_t s = 0; s < 30; ++s) {
    const Seed ts = trial_seed(Seed{9}, 12, s);
    const SensingMatrix phi = src.draw(ts);
    const SparseSignal x = sample_signal({300, 12, SignalDist::Uniform01}, derive(ts, StreamTag::Signal));
    const auto y = measure(phi, x);
    for (std::size_t k = 1; k <= 12; ++k) {
      GreedyOpts opts;
      opts.k = k;
      opts.residual_tol = 0.0;
      const RecoveryEstimate e = omp(phi, y, opts);
      std::vector<std::size_t> support;
      for (std::size_t j = 0; j < e.xhat.size(); ++j)
        if (e.xhat[j] != 0.0) support.push_back(j);
      CHECK(support.size() == k);  // k rounds, k different columns
      std::vector<double> r(y), fit(phi.rows());
      phi.matvec(e.xhat, fit);
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= fit[i];
      for (std::size_t j : support) CHECK(std::abs(phi.dot_column(j, r)) <= 1e-9 * l2_norm(y));
    }
  }
}

TEST_CASE("OMP at k = 20 on signed partial circulant matrices") {
  MatrixSource src;
  src.ensemble = {EnsembleKind::PartialCirculant, 200, 2000};
  int ok = 0;
  for (std::size_t t = 0; t < 200; ++t) {
    const Seed ts = trial_seed(Seed{2}, 20, t);
    const SparseSignal x = sample_signal({2000, 20, SignalDist::Uniform01}, derive(ts, StreamTag::Signal));
    ok += run_trial(src.draw(ts), x, Algorithm::OMP).success();
  }
  CHECK(ok >= 190);
}

TEST_CASE("OMP stopping rule is recorded") {
  const SensingMatrix id(DenseMatrix::identity(20));
  const SparseSignal x = sample_signal({20, 3, SignalDist::Uniform01}, Seed{1});
  GreedyOpts opts;
  opts.k = 6;
  const RecoveryEstimate early = omp(id, measure(id, x), opts);
  CHECK(early.halt == HaltReason::Tolerance);
  CHECK(early.iterations == 3);

  const SensingMatrix phi = MatrixSource{{EnsembleKind::AbsNormal, 30, 90}}.draw(Seed{3});
  const SparseSignal z = sample_signal({90, 10, SignalDist::Uniform01}, Seed{4});
  opts.k = 2;
  const RecoveryEstimate full = omp(phi, measure(phi, z), opts);
  CHECK(full.halt == HaltReason::SparsityReached);
  CHECK(full.iterations == 2);
}

TEST_CASE("CoSaMP output is at most k-sparse and halts for a stated reason") {
  MatrixSource src;
  src.ensemble = {EnsembleKind::AbsNormal, 80, 400};
  for (std::uint64_t s = 0; s < 40; ++s) {
    const Seed ts = trial_seed(Seed{4}, 25, s);
    const SensingMatrix phi = src.draw(ts);
    const std::size_t k = 5 + s % 30;
    const SparseSignal x = sample_signal({400, k, SignalDist::Uniform01}, derive(ts, StreamTag::Signal));
    for (int window : {0, 3}) {
      GreedyOpts opts;
      opts.k = k;
      opts.stagnation_window = window;
      const RecoveryEstimate e = cosamp(phi, measure(phi, x), opts);
      CHECK(nonzeros(e.xhat) <= k);
      const std::set<HaltReason> allowed{HaltReason::Tolerance, HaltReason::Stagnation,
                                         HaltReason::MaxIterations};
      CHECK(allowed.count(e.halt) == 1);
      if (window == 0) CHECK(e.halt != HaltReason::Stagnation);
      CHECK(e.iterations <= opts.max_iters);
    }
  }
}

TEST_CASE("stagnation guard fires on a hopeless instance") {
  // Far past the recovery limit the residual plateaus.
  const SensingMatrix phi = MatrixSource{{EnsembleKind::AbsNormal, 40, 400}}.draw(Seed{8});
  bool fired = false;
  for (std::uint64_t s = 0; s < 20 && !fired; ++s) {
    const SparseSignal x = sample_signal({400, 30, SignalDist::Uniform01}, Seed{s});
    GreedyOpts opts;
    opts.k = 30;
    opts.stagnation_window = 3;
    fired = cosamp(phi, measure(phi, x), opts).halt == HaltReason::Stagnation;
  }
  CHECK(fired);
}

TEST_CASE("success flag always follows the l1 error") {
  const std::vector<double> truth{0.6, 0.8, 0.0};
  for (double eps : {0.0, 1e-9, 5e-7, 1e-6, 1.1e-6, 1e-3}) {
    RecoveryEstimate e;
    e.xhat = {0.6, 0.8, eps};
    const RecoveryOutcome o(e, truth, 0.0);
    CHECK(o.l1_error() == doctest::Approx(eps));
    CHECK(o.success() == (o.l1_error() <= 1e-6));
  }
  const RecoveryOutcome f = RecoveryOutcome::failed("boom", 0.5);
  CHECK_FALSE(f.success());
  CHECK(f.halt() == HaltReason::Error);
  CHECK(f.error_tag() == "boom");
}

TEST_CASE("run_trial on the identity and argument checks") {
  const SensingMatrix id(DenseMatrix::identity(50));
  for (std::uint64_t s = 0; s < 10; ++s) {
    const SparseSignal x = sample_signal({50, 1 + s * 4, SignalDist::AbsNormal}, Seed{s});
    const RecoveryOutcome o = run_trial(id, x, Algorithm::LP);
    CHECK(o.success());
    CHECK(o.l1_error() <= 1e-12);
    CHECK(o.wall_time_s() >= 0.0);
  }
  const SparseSignal wrong = sample_signal({40, 2, SignalDist::Uniform01}, Seed{1});
  CHECK_THROWS_AS(run_trial(id, wrong, Algorithm::OMP), DimensionError);
  GreedyOpts opts;
  opts.k = 0;
  CHECK_THROWS_AS(omp(id, std::vector<double>(50, 1.0), opts), ParameterError);
  CHECK(parse_algorithm("cosamp") == Algorithm::CoSaMP);
  CHECK_THROWS_AS(parse_algorithm("iht"), ParameterError);
}

TEST_CASE("CoSaMP on sparsified abs-normal matrices beats the dense ones at k = 50") {
  int dense = 0, sparse = 0;
  for (std::size_t t = 0; t < 30; ++t) {
    const Seed ts = trial_seed(Seed{6}, 50, t);
    const SparseSignal x = sample_signal({2000, 50, SignalDist::Uniform01}, derive(ts, StreamTag::Signal));
    MatrixSource src;
    src.ensemble = {EnsembleKind::AbsNormal, 200, 2000};
    dense += run_trial(src.draw(ts), x, Algorithm::CoSaMP).success();
    src.density = 0.1;
    sparse += run_trial(src.draw(ts), x, Algorithm::CoSaMP).success();
  }
  CHECK(sparse >= 27);
  CHECK(dense <= 10);
}
