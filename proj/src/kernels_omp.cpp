#include <algorithm>
#include <cstdint>

#include <omp.h>

#include "sparse_sense/kernels.hpp"

namespace sparse_sense::kernels::parallel {

namespace {

bool go_parallel(std::size_t work) {
  return work >= kParallelCutoff && !omp_in_parallel() && omp_get_max_threads() > 1;
}

// Contiguous slice [begin, end) of `total` for thread `tid` of `nthreads`.
std::pair<std::size_t, std::size_t> slice(std::size_t total, int tid, int nthreads) {
  const std::size_t base = total / static_cast<std::size_t>(nthreads);
  const std::size_t extra = total % static_cast<std::size_t>(nthreads);
  const auto t = static_cast<std::size_t>(tid);
  const std::size_t begin = t * base + std::min(t, extra);
  return {begin, begin + base + (t < extra ? 1 : 0)};
}

}  // namespace

// Row blocks: each thread owns a slice of y and walks columns in order, so
// every y_i sees the same summation order as the serial kernel.
void dense_matvec(const DenseView& a, std::span<const double> x, std::span<double> y) {
  if (!go_parallel(a.rows * a.cols)) return serial::dense_matvec(a, x, y);
#pragma omp parallel
  {
    const auto [lo, hi] = slice(a.rows, omp_get_thread_num(), omp_get_num_threads());
    std::fill(y.begin() + static_cast<std::ptrdiff_t>(lo), y.begin() + static_cast<std::ptrdiff_t>(hi), 0.0);
    for (std::size_t j = 0; j < a.cols; ++j) {
      const double xj = x[j];
      if (xj == 0.0) continue;
      const double* col = a.data.data() + j * a.rows;
      for (std::size_t i = lo; i < hi; ++i) y[i] += col[i] * xj;
    }
  }
}

void dense_rmatvec(const DenseView& a, std::span<const double> r, std::span<double> z) {
  if (!go_parallel(a.rows * a.cols)) return serial::dense_rmatvec(a, r, z);
  const auto cols = static_cast<std::int64_t>(a.cols);
#pragma omp parallel for schedule(static)
  for (std::int64_t jj = 0; jj < cols; ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    const double* col = a.data.data() + j * a.rows;
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i) acc += col[i] * r[i];
    z[j] = acc;
  }
}

// Row slices again: each thread scans every column but only the stored rows
// inside its slice (located by binary search on the sorted row indices).
void csc_matvec(const CscView& a, std::span<const double> x, std::span<double> y) {
  if (!go_parallel(a.values.size() + a.cols)) return serial::csc_matvec(a, x, y);
#pragma omp parallel
  {
    const auto [lo, hi] = slice(a.rows, omp_get_thread_num(), omp_get_num_threads());
    std::fill(y.begin() + static_cast<std::ptrdiff_t>(lo), y.begin() + static_cast<std::ptrdiff_t>(hi), 0.0);
    const auto lo32 = static_cast<std::uint32_t>(lo);
    const auto hi32 = static_cast<std::uint32_t>(hi);
    for (std::size_t j = 0; j < a.cols; ++j) {
      const double xj = x[j];
      if (xj == 0.0) continue;
      const auto first = a.row_idx.begin() + static_cast<std::ptrdiff_t>(a.col_ptr[j]);
      const auto last = a.row_idx.begin() + static_cast<std::ptrdiff_t>(a.col_ptr[j + 1]);
      auto it = std::lower_bound(first, last, lo32);
      for (; it != last && *it < hi32; ++it) {
        const auto p = static_cast<std::size_t>(it - a.row_idx.begin());
        y[*it] += a.values[p] * xj;
      }
    }
  }
}

void csc_rmatvec(const CscView& a, std::span<const double> r, std::span<double> z) {
  if (!go_parallel(a.values.size() + a.cols)) return serial::csc_rmatvec(a, r, z);
  const auto cols = static_cast<std::int64_t>(a.cols);
#pragma omp parallel for schedule(static)
  for (std::int64_t jj = 0; jj < cols; ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    double acc = 0.0;
    for (std::size_t p = a.col_ptr[j]; p < a.col_ptr[j + 1]; ++p) {
      acc += a.values[p] * r[a.row_idx[p]];
    }
    z[j] = acc;
  }
}

}  // namespace sparse_sense::kernels::parallel
