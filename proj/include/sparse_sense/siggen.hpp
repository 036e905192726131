#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "sparse_sense/rng.hpp"

namespace sparse_sense {

enum class SignalDist { Uniform01, AbsNormal };

std::string_view to_string(SignalDist dist);
SignalDist parse_signal_dist(std::string_view name);

struct SignalSpec {
  std::size_t N = 0;
  std::size_t k = 0;
  SignalDist dist = SignalDist::Uniform01;
};

/// Exactly k strictly positive entries, unit l2 norm.
class SparseSignal {
 public:
  SparseSignal(std::size_t N, std::vector<std::size_t> support, std::vector<double> values);

  std::size_t size() const noexcept { return N_; }
  std::size_t sparsity() const noexcept { return support_.size(); }
  std::span<const std::size_t> support() const noexcept { return support_; }
  std::span<const double> values() const noexcept { return values_; }
  std::vector<double> dense() const;

 private:
  std::size_t N_;
  std::vector<std::size_t> support_;  // sorted
  std::vector<double> values_;
};

/// Support uniform over all C(N, k) subsets (partial Fisher-Yates), values
/// i.i.d. from `dist`, then scaled to unit norm.
SparseSignal sample_signal(const SignalSpec& spec, Seed seed);

/// sum_i |x_i - xhat_i|; DimensionError on length mismatch.
double l1_distance(std::span<const double> x, std::span<const double> xhat);
double l1_distance(const SparseSignal& x, std::span<const double> xhat);

}  // namespace sparse_sense
