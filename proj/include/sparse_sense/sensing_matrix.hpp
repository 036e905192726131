#pragma once

#include <cstddef>
#include <span>
#include <variant>

#include "sparse_sense/column_sparse.hpp"
#include "sparse_sense/dense_matrix.hpp"

namespace sparse_sense {

/// The operand every recovery algorithm consumes: either dense or
/// column-sparse storage behind one interface.
class SensingMatrix {
 public:
  SensingMatrix() = default;
  SensingMatrix(DenseMatrix m) : storage_(std::move(m)) {}         // NOLINT
  SensingMatrix(ColumnSparseMatrix m) : storage_(std::move(m)) {}  // NOLINT

  std::size_t rows() const;
  std::size_t cols() const;
  bool is_sparse() const { return std::holds_alternative<ColumnSparseMatrix>(storage_); }
  std::size_t stored_entries() const;

  /// y = A x
  void matvec(std::span<const double> x, std::span<double> y) const;
  /// z = A^T r
  void rmatvec(std::span<const double> r, std::span<double> z) const;
  /// Writes column j into a dense length-n buffer.
  void gather_column(std::size_t j, std::span<double> out) const;
  /// a_j . v
  double dot_column(std::size_t j, std::span<const double> v) const;
  /// y += alpha * a_j
  void axpy_column(std::size_t j, double alpha, std::span<double> y) const;

  const DenseMatrix* dense() const { return std::get_if<DenseMatrix>(&storage_); }
  const ColumnSparseMatrix* sparse() const { return std::get_if<ColumnSparseMatrix>(&storage_); }

 private:
  std::variant<DenseMatrix, ColumnSparseMatrix> storage_;
};

}  // namespace sparse_sense
