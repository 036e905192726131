#include "sparse_sense/column_sparse.hpp"

#include <string>

#include "sparse_sense/error.hpp"

namespace sparse_sense {

ColumnSparseMatrix::ColumnSparseMatrix(std::size_t rows, std::size_t cols,
                                       std::vector<std::size_t> col_ptr,
                                       std::vector<std::uint32_t> row_idx,
                                       std::vector<double> values)
    : rows_(rows),
      cols_(cols),
      col_ptr_(std::move(col_ptr)),
      row_idx_(std::move(row_idx)),
      values_(std::move(values)) {
  if (col_ptr_.size() != cols_ + 1 || col_ptr_.front() != 0 ||
      col_ptr_.back() != values_.size() || row_idx_.size() != values_.size()) {
    throw DimensionError("inconsistent compressed-column arrays");
  }
  for (std::size_t j = 0; j < cols_; ++j) {
    if (col_ptr_[j] > col_ptr_[j + 1]) throw DimensionError("column pointers must not decrease");
    for (std::size_t p = col_ptr_[j]; p < col_ptr_[j + 1]; ++p) {
      if (row_idx_[p] >= rows_) {
        throw DimensionError("row index out of range in column " + std::to_string(j));
      }
      if (p > col_ptr_[j] && row_idx_[p] <= row_idx_[p - 1]) {
        throw DimensionError("row indices must be sorted and unique in column " +
                             std::to_string(j));
      }
    }
  }
}

ColumnSparseMatrix ColumnSparseMatrix::from_dense(const DenseMatrix& dense) {
  std::vector<std::size_t> col_ptr{0};
  std::vector<std::uint32_t> row_idx;
  std::vector<double> values;
  col_ptr.reserve(dense.cols() + 1);
  for (std::size_t j = 0; j < dense.cols(); ++j) {
    const auto col = dense.col(j);
    for (std::size_t i = 0; i < dense.rows(); ++i) {
      if (col[i] != 0.0) {
        row_idx.push_back(static_cast<std::uint32_t>(i));
        values.push_back(col[i]);
      }
    }
    col_ptr.push_back(values.size());
  }
  return {dense.rows(), dense.cols(), std::move(col_ptr), std::move(row_idx), std::move(values)};
}

DenseMatrix ColumnSparseMatrix::to_dense() const {
  DenseMatrix out(rows_, cols_);
  for (std::size_t j = 0; j < cols_; ++j) {
    const auto rows = col_rows(j);
    const auto vals = col_values(j);
    for (std::size_t p = 0; p < rows.size(); ++p) out(rows[p], j) = vals[p];
  }
  return out;
}

}  // namespace sparse_sense
