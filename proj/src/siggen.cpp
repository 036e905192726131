#include "sparse_sense/siggen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sparse_sense/error.hpp"
#include "sparse_sense/numkit.hpp"

namespace sparse_sense {

std::string_view to_string(SignalDist dist) {
  return dist == SignalDist::Uniform01 ? "Uniform01" : "AbsNormal";
}

SignalDist parse_signal_dist(std::string_view name) {
  if (name == "Uniform01") return SignalDist::Uniform01;
  if (name == "AbsNormal") return SignalDist::AbsNormal;
  throw ParameterError("unknown signal distribution '" + std::string(name) + "'");
}

SparseSignal::SparseSignal(std::size_t N, std::vector<std::size_t> support,
                           std::vector<double> values)
    : N_(N), support_(std::move(support)), values_(std::move(values)) {
  if (support_.size() != values_.size()) throw DimensionError("support and values differ in length");
  for (std::size_t q = 0; q < support_.size(); ++q) {
    if (support_[q] >= N_) throw DimensionError("signal support index out of range");
    if (q > 0 && support_[q] <= support_[q - 1]) throw ParameterError("signal support must be sorted and unique");
  }
}

std::vector<double> SparseSignal::dense() const {
  std::vector<double> x(N_, 0.0);
  for (std::size_t q = 0; q < support_.size(); ++q) x[support_[q]] = values_[q];
  return x;
}

SparseSignal sample_signal(const SignalSpec& spec, Seed seed) {
  if (spec.k < 1 || spec.k > spec.N) {
    throw ParameterError("signal needs 1 <= k <= N (k = " + std::to_string(spec.k) +
                         ", N = " + std::to_string(spec.N) + ")");
  }
  Rng rng(seed);
  auto support = rng.sample_without_replacement(spec.N, spec.k);
  std::sort(support.begin(), support.end());
  std::vector<double> values(spec.k);
  for (double& v : values) {
    if (spec.dist == SignalDist::Uniform01) {
      v = rng.uniform_open01();
    } else {
      do {
        v = std::fabs(rng.standard_normal());
      } while (v == 0.0);
    }
  }
  const double norm = l2_norm(values);
  for (double& v : values) v /= norm;
  return SparseSignal(spec.N, std::move(support), std::move(values));
}

double l1_distance(std::span<const double> x, std::span<const double> xhat) {
  if (x.size() != xhat.size()) throw DimensionError("l1_distance: lengths differ");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::fabs(x[i] - xhat[i]);
  return s;
}

double l1_distance(const SparseSignal& x, std::span<const double> xhat) {
  if (x.size() != xhat.size()) throw DimensionError("l1_distance: lengths differ");
  double s = 0.0;
  std::size_t q = 0;
  const auto support = x.support();
  const auto values = x.values();
  for (std::size_t i = 0; i < xhat.size(); ++i) {
    if (q < support.size() && support[q] == i) {
      s += std::fabs(values[q] - xhat[i]);
      ++q;
    } else {
      s += std::fabs(xhat[i]);
    }
  }
  return s;
}

}  // namespace sparse_sense
