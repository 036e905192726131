#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sparse_sense/dense_matrix.hpp"
#include "sparse_sense/sensing_matrix.hpp"

namespace sparse_sense {

struct LeastSquaresResult {
  std::vector<double> coefficients;  // aligned with the support order
  std::vector<double> residual;      // y - A_T c, length n
  double residual_norm = 0.0;
  std::size_t rank = 0;
  bool rank_deficient = false;
};

/// Minimises ||y - A_T c||_2 over the columns listed in `support`, by
/// Householder QR with column pivoting of the gathered n x |T| block. A
/// numerically rank-deficient block yields the minimum-norm solution and sets
/// `rank_deficient`.
LeastSquaresResult lstsq_on_support(const SensingMatrix& a, std::span<const std::size_t> support,
                                    std::span<const double> y);

/// Dense least squares on all columns of a column-major block (used by the
/// support variant and by tests).
LeastSquaresResult lstsq_dense(DenseMatrix block, std::span<const double> y);

/// Eigenvalues (ascending) of a symmetric matrix. Orders 1 and 2 use closed
/// forms, order 3 the trigonometric cubic solution, larger orders cyclic
/// Jacobi sweeps until the off-diagonal mass falls below 1e-12 of the norm.
std::vector<double> symmetric_eigenvalues(const DenseMatrix& sym);

/// Largest restricted-isometry deviation over all size-k column supports:
/// max_T max(1 - lambda_min(G_T), lambda_max(G_T) - 1), G_T = A_T^T A_T.
inline constexpr std::size_t kRipEnumerationLimit = 1'000'000;
double rip_epsilon(const SensingMatrix& a, std::size_t k);

/// C(n, k), saturating at SIZE_MAX.
std::size_t binomial(std::size_t n, std::size_t k);

double l2_norm(std::span<const double> v);

}  // namespace sparse_sense
