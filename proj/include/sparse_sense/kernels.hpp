#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

// Matrix-vector kernels in two flavours. `serial` is the reference; `parallel`
// splits work with OpenMP so that every output element is accumulated in the
// same order as the reference, which makes the two bit-identical. The
// parallel versions fall back to one thread inside an enclosing parallel
// region or below a size cutoff.

namespace sparse_sense::kernels {

/// Column-compressed view: column j owns entries [col_ptr[j], col_ptr[j+1]).
struct CscView {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::span<const std::size_t> col_ptr;
  std::span<const std::uint32_t> row_idx;
  std::span<const double> values;
};

/// Column-major dense view.
struct DenseView {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::span<const double> data;
};

namespace serial {
void dense_matvec(const DenseView& a, std::span<const double> x, std::span<double> y);
void dense_rmatvec(const DenseView& a, std::span<const double> r, std::span<double> z);
void csc_matvec(const CscView& a, std::span<const double> x, std::span<double> y);
void csc_rmatvec(const CscView& a, std::span<const double> r, std::span<double> z);
}  // namespace serial

namespace parallel {
void dense_matvec(const DenseView& a, std::span<const double> x, std::span<double> y);
void dense_rmatvec(const DenseView& a, std::span<const double> r, std::span<double> z);
void csc_matvec(const CscView& a, std::span<const double> x, std::span<double> y);
void csc_rmatvec(const CscView& a, std::span<const double> r, std::span<double> z);
}  // namespace parallel

/// Work (multiply-adds) below which the parallel kernels stay single-threaded.
inline constexpr std::size_t kParallelCutoff = 1 << 15;

}  // namespace sparse_sense::kernels
