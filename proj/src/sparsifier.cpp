#include "sparse_sense/sparsifier.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "sparse_sense/csv.hpp"
#include "sparse_sense/error.hpp"
#include "sparse_sense/matgen.hpp"

namespace sparse_sense {

namespace {

std::vector<std::uint32_t> full_positions(std::size_t rows, std::size_t cols) {
  std::vector<std::uint32_t> positions(rows * cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) positions[j * rows + i] = static_cast<std::uint32_t>(i);
  return positions;
}

}  // namespace

Mask::Mask(std::size_t rows, std::size_t cols, std::size_t ones_per_column,
           std::vector<std::uint32_t> positions, std::optional<Seed> seed)
    : rows_(rows), cols_(cols), t_(ones_per_column), positions_(std::move(positions)), seed_(seed) {
  if (t_ < 1 || t_ > rows_) {
    throw ParameterError("mask needs 1 <= t <= n (t = " + std::to_string(t_) +
                         ", n = " + std::to_string(rows_) + ")");
  }
  if (positions_.size() != t_ * cols_) throw DimensionError("mask positions have wrong length");
  for (std::size_t j = 0; j < cols_; ++j) {
    auto first = positions_.begin() + static_cast<std::ptrdiff_t>(j * t_);
    auto last = first + static_cast<std::ptrdiff_t>(t_);
    std::sort(first, last);
    if (*(last - 1) >= rows_) throw DimensionError("mask row index out of range");
    if (std::adjacent_find(first, last) != last) {
      throw DimensionError("mask column " + std::to_string(j) + " repeats a row");
    }
  }
}

Mask Mask::full(std::size_t rows, std::size_t cols) {
  return Mask(rows, cols, rows, full_positions(rows, cols));
}

bool Mask::contains(std::size_t i, std::size_t j) const {
  const auto c = column(j);
  return std::binary_search(c.begin(), c.end(), static_cast<std::uint32_t>(i));
}

void Mask::redraw_column(std::size_t j, Rng& rng) {
  const auto rows = rng.sample_without_replacement(rows_, t_);
  auto first = positions_.begin() + static_cast<std::ptrdiff_t>(j * t_);
  std::transform(rows.begin(), rows.end(), first,
                 [](std::size_t r) { return static_cast<std::uint32_t>(r); });
  std::sort(first, first + static_cast<std::ptrdiff_t>(t_));
}

std::size_t ones_for_density(double s, std::size_t n) {
  if (!(s > 0.0 && s <= 1.0)) throw ParameterError("relative density must lie in (0, 1]");
  const auto t = static_cast<std::size_t>(std::llround(s * static_cast<double>(n)));
  if (t < 1 || t > n) {
    throw ParameterError("density " + csv::format_double(s) + " gives t = " + std::to_string(t) +
                         " ones per column for n = " + std::to_string(n));
  }
  return t;
}

Mask make_mask(std::size_t n, std::size_t N, std::size_t t, Seed seed) {
  if (t < 1 || t > n) {
    throw ParameterError("make_mask needs 1 <= t <= n (t = " + std::to_string(t) +
                         ", n = " + std::to_string(n) + ")");
  }
  if (t == n) return Mask(n, N, n, full_positions(n, N), seed);
  Rng rng(seed);
  std::vector<std::uint32_t> positions(t * N);
  for (std::size_t j = 0; j < N; ++j) {
    const auto rows = rng.sample_without_replacement(n, t);
    for (std::size_t q = 0; q < t; ++q) positions[j * t + q] = static_cast<std::uint32_t>(rows[q]);
  }
  return Mask(n, N, t, std::move(positions), seed);
}

SparsifiedMatrix::SparsifiedMatrix(ColumnSparseMatrix entries, Mask mask,
                                   std::vector<double> column_scales, bool normalized,
                                   std::size_t resampled_columns)
    : entries_(std::move(entries)),
      mask_(std::move(mask)),
      scales_(std::move(column_scales)),
      normalized_(normalized),
      resampled_(resampled_columns) {}

double SparsifiedMatrix::density() const {
  const double total = static_cast<double>(rows()) * static_cast<double>(cols());
  return total == 0.0 ? 0.0 : static_cast<double>(entries_.nnz()) / total;
}

SparsifiedMatrix apply(const DenseMatrix& phi, Mask mask, bool renormalize) {
  if (phi.rows() != mask.rows() || phi.cols() != mask.cols()) {
    throw DimensionError("apply: matrix and mask shapes differ");
  }
  const std::size_t n = phi.rows();
  const std::size_t N = phi.cols();
  const std::size_t t = mask.ones_per_column();

  std::vector<std::size_t> col_ptr{0};
  col_ptr.reserve(N + 1);
  std::vector<std::uint32_t> row_idx;
  std::vector<double> values;
  row_idx.reserve(t * N);
  values.reserve(t * N);
  std::vector<double> scales(N, 1.0);
  std::size_t resampled = 0;

  for (std::size_t j = 0; j < N; ++j) {
    const auto col = phi.col(j);
    auto gather = [&] {
      double ss = 0.0;
      for (std::uint32_t i : mask.column(j)) ss += col[i] * col[i];
      return ss;
    };
    double ss = gather();
    if (renormalize && !(ss > 0.0)) {
      if (!mask.seed()) throw DegenerateColumnError(j);
      int attempt = 0;
      while (!(ss > 0.0) && attempt < kMaxColumnResamples) {
        Rng rng(derive(*mask.seed(), StreamTag::MaskResample, j, static_cast<std::uint64_t>(attempt)));
        mask.redraw_column(j, rng);
        ss = gather();
        ++attempt;
      }
      if (!(ss > 0.0)) throw DegenerateColumnError(j);
      ++resampled;
    }
    const double norm = renormalize ? std::sqrt(ss) : 1.0;
    for (std::uint32_t i : mask.column(j)) {
      if (col[i] == 0.0) continue;
      row_idx.push_back(i);
      values.push_back(renormalize ? col[i] / norm : col[i]);
    }
    col_ptr.push_back(values.size());
    scales[j] = norm;
  }
  ColumnSparseMatrix entries(n, N, std::move(col_ptr), std::move(row_idx), std::move(values));
  return SparsifiedMatrix(std::move(entries), std::move(mask), std::move(scales), renormalize,
                          resampled);
}

double relative_density(const SparsifiedMatrix& inner, const DenseMatrix& outer) {
  if (inner.rows() != outer.rows() || inner.cols() != outer.cols()) {
    throw DimensionError("relative_density: shapes differ");
  }
  const double base = density(outer);
  if (base == 0.0) throw UndefinedRatioError("relative density of a zero matrix is undefined");
  return inner.density() / base;
}

void write_text(std::ostream& out, const SparsifiedMatrix& m) {
  const auto& e = m.entries();
  out << e.rows() << ' ' << e.cols() << ' ' << m.mask().ones_per_column() << '\n';
  for (std::size_t j = 0; j < e.cols(); ++j) {
    const auto rows = e.col_rows(j);
    const auto vals = e.col_values(j);
    out << rows.size();
    for (std::size_t p = 0; p < rows.size(); ++p) {
      out << ' ' << rows[p] << ':' << csv::format_double(vals[p]);
    }
    out << '\n';
  }
}

SparsifiedText read_text(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DimensionError("sparsified text: missing header");
  std::istringstream header(line);
  std::size_t n = 0, N = 0, t = 0;
  if (!(header >> n >> N >> t)) throw DimensionError("sparsified text: bad header '" + line + "'");

  std::vector<std::size_t> col_ptr{0};
  std::vector<std::uint32_t> row_idx;
  std::vector<double> values;
  for (std::size_t j = 0; j < N; ++j) {
    if (!std::getline(in, line)) throw DimensionError("sparsified text: missing column " + std::to_string(j));
    std::istringstream ls(line);
    std::size_t count = 0;
    if (!(ls >> count) || count > t) throw DimensionError("sparsified text: bad count in column " + std::to_string(j));
    for (std::size_t q = 0; q < count; ++q) {
      std::string pair;
      if (!(ls >> pair)) throw DimensionError("sparsified text: short column " + std::to_string(j));
      const auto colon = pair.find(':');
      if (colon == std::string::npos) throw DimensionError("sparsified text: expected index:value");
      row_idx.push_back(static_cast<std::uint32_t>(std::stoul(pair.substr(0, colon))));
      values.push_back(std::stod(pair.substr(colon + 1)));
    }
    col_ptr.push_back(values.size());
  }
  return {t, ColumnSparseMatrix(n, N, std::move(col_ptr), std::move(row_idx), std::move(values))};
}

}  // namespace sparse_sense
