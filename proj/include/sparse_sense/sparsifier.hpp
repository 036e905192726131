#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "sparse_sense/column_sparse.hpp"
#include "sparse_sense/dense_matrix.hpp"
#include "sparse_sense/rng.hpp"

namespace sparse_sense {

/// {0,1} n x N matrix with exactly t ones in every column, stored as the
/// sorted row positions of each column.
class Mask {
 public:
  /// `positions` holds column j's t row indices at [j*t, (j+1)*t); they are
  /// sorted per column here and checked for range and uniqueness.
  Mask(std::size_t rows, std::size_t cols, std::size_t ones_per_column,
       std::vector<std::uint32_t> positions, std::optional<Seed> seed = std::nullopt);

  /// Every entry set.
  static Mask full(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t ones_per_column() const noexcept { return t_; }
  const std::optional<Seed>& seed() const noexcept { return seed_; }

  std::span<const std::uint32_t> column(std::size_t j) const {
    return {positions_.data() + j * t_, t_};
  }
  bool contains(std::size_t i, std::size_t j) const;

  /// Redraws one column's support from `rng`.
  void redraw_column(std::size_t j, Rng& rng);

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t t_;
  std::vector<std::uint32_t> positions_;
  std::optional<Seed> seed_;
};

/// t = round(s * n) for a relative density s in (0, 1]; throws when the
/// result leaves [1, n].
std::size_t ones_for_density(double s, std::size_t n);

/// Each column independently gets t rows chosen uniformly without
/// replacement. Throws ParameterError unless 1 <= t <= n.
Mask make_mask(std::size_t n, std::size_t N, std::size_t t, Seed seed);

/// A sparsification Phi' = Phi * S in column-compressed form. Only entries
/// that are nonzero in Phi and set in S are stored.
class SparsifiedMatrix {
 public:
  SparsifiedMatrix(ColumnSparseMatrix entries, Mask mask, std::vector<double> column_scales,
                   bool normalized, std::size_t resampled_columns);

  const ColumnSparseMatrix& entries() const noexcept { return entries_; }
  ColumnSparseMatrix&& take_entries() && { return std::move(entries_); }
  const Mask& mask() const noexcept { return mask_; }
  /// Norm each column was divided by (all 1 when not normalized).
  std::span<const double> column_scales() const noexcept { return scales_; }
  bool normalized() const noexcept { return normalized_; }
  std::size_t resampled_columns() const noexcept { return resampled_; }

  std::size_t rows() const noexcept { return entries_.rows(); }
  std::size_t cols() const noexcept { return entries_.cols(); }

  /// Fraction of nonzero entries.
  double density() const;

 private:
  ColumnSparseMatrix entries_;
  Mask mask_;
  std::vector<double> scales_;
  bool normalized_;
  std::size_t resampled_;
};

/// Maximum number of fresh draws for a column whose masked entries are all
/// zero before apply() gives up.
inline constexpr int kMaxColumnResamples = 100;

/// Entry-wise product of `phi` with `mask`. With `renormalize`, each column is
/// scaled to unit l2 norm; a column that masks to zero is redrawn from the
/// mask's seed up to kMaxColumnResamples times, then DegenerateColumnError.
SparsifiedMatrix apply(const DenseMatrix& phi, Mask mask, bool renormalize);

/// density(inner) / density(outer); UndefinedRatioError when outer is zero.
double relative_density(const SparsifiedMatrix& inner, const DenseMatrix& outer);

/// Text cache format (see docs/formats.md):
///   line 1: "n N t"
///   then one line per column: "count i:v i:v ..." with v printed to 17
///   significant digits.
void write_text(std::ostream& out, const SparsifiedMatrix& m);

struct SparsifiedText {
  std::size_t ones_per_column = 0;
  ColumnSparseMatrix entries;
};
SparsifiedText read_text(std::istream& in);

}  // namespace sparse_sense
