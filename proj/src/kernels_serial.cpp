// Reference kernels. The parallel versions must reproduce these bit for bit.

#include <algorithm>

#include "sparse_sense/kernels.hpp"

namespace sparse_sense::kernels::serial {

void dense_matvec(const DenseView& a, std::span<const double> x, std::span<double> y) {
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t j = 0; j < a.cols; ++j) {
    const double xj = x[j];
    if (xj == 0.0) continue;
    const double* col = a.data.data() + j * a.rows;
    for (std::size_t i = 0; i < a.rows; ++i) y[i] += col[i] * xj;
  }
}

void dense_rmatvec(const DenseView& a, std::span<const double> r, std::span<double> z) {
  for (std::size_t j = 0; j < a.cols; ++j) {
    const double* col = a.data.data() + j * a.rows;
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i) acc += col[i] * r[i];
    z[j] = acc;
  }
}

void csc_matvec(const CscView& a, std::span<const double> x, std::span<double> y) {
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t j = 0; j < a.cols; ++j) {
    const double xj = x[j];
    if (xj == 0.0) continue;
    for (std::size_t p = a.col_ptr[j]; p < a.col_ptr[j + 1]; ++p) {
      y[a.row_idx[p]] += a.values[p] * xj;
    }
  }
}

void csc_rmatvec(const CscView& a, std::span<const double> r, std::span<double> z) {
  for (std::size_t j = 0; j < a.cols; ++j) {
    double acc = 0.0;
    for (std::size_t p = a.col_ptr[j]; p < a.col_ptr[j + 1]; ++p) {
      acc += a.values[p] * r[a.row_idx[p]];
    }
    z[j] = acc;
  }
}

}  // namespace sparse_sense::kernels::serial
