#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sparse_sense/dense_matrix.hpp"
#include "sparse_sense/kernels.hpp"

namespace sparse_sense {

/// n x N matrix in compressed-column form. Row indices are sorted and unique
/// within each column; a product with it touches only stored entries.
class ColumnSparseMatrix {
 public:
  ColumnSparseMatrix() = default;

  /// Takes ownership of raw CSC arrays and checks the structural invariants.
  ColumnSparseMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> col_ptr,
                     std::vector<std::uint32_t> row_idx, std::vector<double> values);

  /// Keeps the nonzero entries of `dense`.
  static ColumnSparseMatrix from_dense(const DenseMatrix& dense);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  std::span<const std::uint32_t> col_rows(std::size_t j) const {
    return {row_idx_.data() + col_ptr_[j], col_ptr_[j + 1] - col_ptr_[j]};
  }
  std::span<const double> col_values(std::size_t j) const {
    return {values_.data() + col_ptr_[j], col_ptr_[j + 1] - col_ptr_[j]};
  }
  std::span<double> col_values(std::size_t j) {
    return {values_.data() + col_ptr_[j], col_ptr_[j + 1] - col_ptr_[j]};
  }

  kernels::CscView view() const { return {rows_, cols_, col_ptr_, row_idx_, values_}; }
  DenseMatrix to_dense() const;

  friend bool operator==(const ColumnSparseMatrix&, const ColumnSparseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> col_ptr_{0};
  std::vector<std::uint32_t> row_idx_;
  std::vector<double> values_;
};

}  // namespace sparse_sense
