#include "sparse_sense/sensing_matrix.hpp"

#include <algorithm>

#include "sparse_sense/error.hpp"
#include "sparse_sense/kernels.hpp"

namespace sparse_sense {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

kernels::DenseView view_of(const DenseMatrix& m) { return {m.rows(), m.cols(), m.data()}; }

}  // namespace

std::size_t SensingMatrix::rows() const {
  return std::visit([](const auto& m) { return m.rows(); }, storage_);
}

std::size_t SensingMatrix::cols() const {
  return std::visit([](const auto& m) { return m.cols(); }, storage_);
}

std::size_t SensingMatrix::stored_entries() const {
  return std::visit(overloaded{[](const DenseMatrix& m) { return m.rows() * m.cols(); },
                               [](const ColumnSparseMatrix& m) { return m.nnz(); }},
                    storage_);
}

void SensingMatrix::matvec(std::span<const double> x, std::span<double> y) const {
  if (x.size() != cols() || y.size() != rows()) throw DimensionError("matvec: shape mismatch");
  std::visit(overloaded{[&](const DenseMatrix& m) { kernels::parallel::dense_matvec(view_of(m), x, y); },
                        [&](const ColumnSparseMatrix& m) { kernels::parallel::csc_matvec(m.view(), x, y); }},
             storage_);
}

void SensingMatrix::rmatvec(std::span<const double> r, std::span<double> z) const {
  if (r.size() != rows() || z.size() != cols()) throw DimensionError("rmatvec: shape mismatch");
  std::visit(overloaded{[&](const DenseMatrix& m) { kernels::parallel::dense_rmatvec(view_of(m), r, z); },
                        [&](const ColumnSparseMatrix& m) { kernels::parallel::csc_rmatvec(m.view(), r, z); }},
             storage_);
}

void SensingMatrix::gather_column(std::size_t j, std::span<double> out) const {
  std::visit(overloaded{[&](const DenseMatrix& m) {
                          const auto c = m.col(j);
                          std::copy(c.begin(), c.end(), out.begin());
                        },
                        [&](const ColumnSparseMatrix& m) {
                          std::fill(out.begin(), out.end(), 0.0);
                          const auto rows = m.col_rows(j);
                          const auto vals = m.col_values(j);
                          for (std::size_t p = 0; p < rows.size(); ++p) out[rows[p]] = vals[p];
                        }},
             storage_);
}

double SensingMatrix::dot_column(std::size_t j, std::span<const double> v) const {
  return std::visit(overloaded{[&](const DenseMatrix& m) {
                                 const auto c = m.col(j);
                                 double acc = 0.0;
                                 for (std::size_t i = 0; i < c.size(); ++i) acc += c[i] * v[i];
                                 return acc;
                               },
                               [&](const ColumnSparseMatrix& m) {
                                 const auto rows = m.col_rows(j);
                                 const auto vals = m.col_values(j);
                                 double acc = 0.0;
                                 for (std::size_t p = 0; p < rows.size(); ++p) acc += vals[p] * v[rows[p]];
                                 return acc;
                               }},
                    storage_);
}

void SensingMatrix::axpy_column(std::size_t j, double alpha, std::span<double> y) const {
  std::visit(overloaded{[&](const DenseMatrix& m) {
                          const auto c = m.col(j);
                          for (std::size_t i = 0; i < c.size(); ++i) y[i] += alpha * c[i];
                        },
                        [&](const ColumnSparseMatrix& m) {
                          const auto rows = m.col_rows(j);
                          const auto vals = m.col_values(j);
                          for (std::size_t p = 0; p < rows.size(); ++p) y[rows[p]] += alpha * vals[p];
                        }},
             storage_);
}

}  // namespace sparse_sense
