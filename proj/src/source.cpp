#include "sparse_sense/source.hpp"

#include "sparse_sense/sparsifier.hpp"

namespace sparse_sense {

SensingMatrix MatrixSource::draw(Seed seed) const {
  DenseMatrix base = generate(ensemble, derive(seed, StreamTag::Matrix));
  if (density == 1.0) {
    if (renormalize) normalize_columns(base);
    return SensingMatrix(std::move(base));
  }
  const std::size_t t = ones_for_density(density, ensemble.n);
  Mask mask = make_mask(ensemble.n, ensemble.N, t, derive(seed, StreamTag::Mask));
  return SensingMatrix(apply(base, std::move(mask), renormalize).take_entries());
}

}  // namespace sparse_sense
