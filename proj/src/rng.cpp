#include "sparse_sense/rng.hpp"

#include <cmath>
#include <numeric>
#include <utility>

#include "sparse_sense/error.hpp"

namespace sparse_sense {

double Rng::uniform_open01() {
  constexpr double kScale = 0x1.0p-53;
  for (;;) {
    const double u = static_cast<double>(engine_() >> 11) * kScale;
    if (u > 0.0) return u;
  }
}

double Rng::standard_normal() {
  if (spare_normal_) {
    const double z = *spare_normal_;
    spare_normal_.reset();
    return z;
  }
  for (;;) {
    const double u = 2.0 * uniform_open01() - 1.0;
    const double v = 2.0 * uniform_open01() - 1.0;
    const double s = u * u + v * v;
    if (s >= 1.0 || s == 0.0) continue;
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * f;
    return u * f;
  }
}

std::size_t Rng::below(std::size_t bound) {
  if (bound == 0) throw ParameterError("Rng::below: bound must be positive");
  std::uniform_int_distribution<std::size_t> dist(0, bound - 1);
  return dist(engine_);
}

std::vector<std::size_t> Rng::sample_without_replacement(std::size_t population,
                                                         std::size_t count) {
  if (count > population) {
    throw ParameterError("cannot draw " + std::to_string(count) + " of " +
                         std::to_string(population) + " without replacement");
  }
  std::vector<std::size_t> pool(population);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + below(population - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

}  // namespace sparse_sense
