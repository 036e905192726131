#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sparse_sense/dense_matrix.hpp"
#include "sparse_sense/rng.hpp"

namespace sparse_sense {

/// Matrix ensembles. AbsNormal entries are |z| for z ~ N(0,1); the partial
/// circulant generator row is signed N(0,1). Identity is a fixed harness
/// source (n must equal N), not a random ensemble.
enum class EnsembleKind { AbsNormal, Uniform01, Bernoulli, PartialCirculant, AllOnes, Identity };

std::string_view to_string(EnsembleKind kind);
EnsembleKind parse_ensemble_kind(std::string_view name);

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::AbsNormal;
  std::size_t n = 0;
  std::size_t N = 0;
  double p = 0.5;  // Bernoulli only

  /// Throws ParameterError when the spec cannot be generated.
  void validate() const;
};

void to_json(nlohmann::json& j, const EnsembleSpec& spec);
void from_json(const nlohmann::json& j, EnsembleSpec& spec);

/// Draws an n x N matrix from the ensemble. Pure in (spec, seed).
DenseMatrix generate(const EnsembleSpec& spec, Seed seed);

struct PartialCirculantSample {
  DenseMatrix matrix;
  std::vector<double> generator;       // first row of the N x N circulant
  std::vector<std::size_t> row_shifts;  // circulant row index of each sampled row
};

/// Row i of the circulant is the generator cyclically shifted right by i:
/// C(i, j) = generator[(j - i) mod N]. The n sampled rows are distinct.
PartialCirculantSample sample_partial_circulant(std::size_t n, std::size_t N, Seed seed);

/// Fraction of entries with |a_ij| > 0.
double density(const DenseMatrix& m);

/// Scales every column to unit l2 norm and returns the norms divided out.
/// Throws DegenerateColumnError on an all-zero column.
std::vector<double> normalize_columns(DenseMatrix& m);

}  // namespace sparse_sense
