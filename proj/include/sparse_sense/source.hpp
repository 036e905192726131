#pragma once

#include <cstddef>
#include <optional>

#include "sparse_sense/matgen.hpp"
#include "sparse_sense/rng.hpp"
#include "sparse_sense/sensing_matrix.hpp"
#include "sparse_sense/siggen.hpp"

namespace sparse_sense {

enum class MatrixMode { Fresh, Fixed };

/// Where trial matrices come from: an ensemble sparsified to a relative
/// density, drawn anew for every trial (Fresh) or once per run (Fixed).
struct MatrixSource {
  EnsembleSpec ensemble;
  double density = 1.0;
  bool renormalize = true;
  MatrixMode mode = MatrixMode::Fresh;
  SignalDist signal_dist = SignalDist::Uniform01;

  /// Base matrix from Matrix stream of `seed`, mask from its Mask stream.
  /// density == 1 keeps dense storage; otherwise column-sparse.
  SensingMatrix draw(Seed seed) const;
};

/// Per-trial seed: every stream of a trial (matrix, mask, signal) derives
/// from this value, so trial outcomes depend only on (master, k, index).
inline Seed trial_seed(Seed master, std::size_t k, std::size_t trial) {
  return derive(master, StreamTag::Trial, k, trial);
}

}  // namespace sparse_sense
