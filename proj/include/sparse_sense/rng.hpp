#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace sparse_sense {

/// Master seed of an experiment. Every random stream in the toolkit is a
/// pure function of a Seed, so equal seeds reproduce equal draws.
struct Seed {
  std::uint64_t master = 0;

  friend bool operator==(const Seed&, const Seed&) = default;
};

/// Purpose tags used to split one master seed into independent streams.
enum class StreamTag : std::uint64_t {
  Trial = 0x7472,
  Matrix = 0x6d61,
  Mask = 0x6d6b,
  MaskResample = 0x7273,
  Signal = 0x7367,
};

/// splitmix64 finalizer: a bijective 64-bit avalanche mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Sub-seed for (parent, tag, a, b). Distinct tuples give unrelated streams.
constexpr Seed derive(Seed parent, StreamTag tag, std::uint64_t a = 0,
                      std::uint64_t b = 0) noexcept {
  std::uint64_t h = mix64(parent.master);
  h = mix64(h ^ static_cast<std::uint64_t>(tag));
  h = mix64(h ^ a);
  h = mix64(h ^ (b + 0x632be59bd9b4e019ULL));
  return Seed{h};
}

/// Seeded 64-bit generator (std::mt19937_64) plus the variate algorithms the
/// toolkit pins down explicitly:
///  - uniform_open01: top 53 bits scaled by 2^-53, exact zero redrawn.
///  - standard_normal: Marsaglia polar method on uniforms in (-1, 1), the
///    second variate of each accepted pair cached for the next call.
///  - below: std::uniform_int_distribution over [0, bound).
class Rng {
 public:
  explicit Rng(Seed seed) : engine_(seed.master) {}

  std::uint64_t next() { return engine_(); }

  double uniform_open01();
  double standard_normal();
  std::size_t below(std::size_t bound);

  /// `count` distinct values from [0, population) by a partial Fisher-Yates
  /// shuffle, in draw order. Every size-`count` subset is equally likely.
  std::vector<std::size_t> sample_without_replacement(std::size_t population,
                                                      std::size_t count);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

}  // namespace sparse_sense
