#include <doctest.h>

#include <cmath>
#include <set>

#include "sparse_sense/error.hpp"
#include "sparse_sense/matgen.hpp"

using namespace sparse_sense;

TEST_CASE("all-ones and degenerate Bernoulli") {
  const DenseMatrix j = generate({EnsembleKind::AllOnes, 2, 3}, Seed{99});
  CHECK(j == DenseMatrix(2, 3, 1.0));
  EnsembleSpec b{EnsembleKind::Bernoulli, 2, 2, 1.0};
  CHECK(generate(b, Seed{5}) == DenseMatrix(2, 2, 1.0));
  b.p = 0.0;
  CHECK(density(generate(b, Seed{5})) == 0.0);
}

TEST_CASE("Bernoulli empirical density concentrates at p") {
  for (double p : {0.05, 0.5}) {
    EnsembleSpec spec{EnsembleKind::Bernoulli, 200, 2000, p};
    for (std::uint64_t s = 0; s < 3; ++s) {
      const DenseMatrix m = generate(spec, Seed{s});
      CHECK(std::abs(density(m) - p) <= 0.02);
      for (double v : m.data()) CHECK((v == 0.0 || v == 1.0));
    }
  }
}

TEST_CASE("continuous ensembles have full density and the right sign") {
  const DenseMatrix a = generate({EnsembleKind::AbsNormal, 50, 300}, Seed{1});
  const DenseMatrix u = generate({EnsembleKind::Uniform01, 50, 300}, Seed{1});
  CHECK(density(a) == 1.0);
  CHECK(density(u) == 1.0);
  double mean_a = 0.0;
  for (double v : a.data()) {
    CHECK(v > 0.0);
    mean_a += v;
  }
  for (double v : u.data()) CHECK((v > 0.0 && v < 1.0));
  mean_a /= static_cast<double>(a.data().size());
  // E|z| = sqrt(2/pi) for z ~ N(0,1)
  CHECK(mean_a == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(0.03));
}

TEST_CASE("generation is a pure function of the seed") {
  for (auto kind : {EnsembleKind::AbsNormal, EnsembleKind::Uniform01, EnsembleKind::Bernoulli,
                    EnsembleKind::PartialCirculant}) {
    EnsembleSpec spec{kind, 20, 40, 0.3};
    CHECK(generate(spec, Seed{11}) == generate(spec, Seed{11}));
    CHECK_FALSE(generate(spec, Seed{11}) == generate(spec, Seed{12}));
  }
}

TEST_CASE("partial circulant rows are distinct cyclic shifts of one generator") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const std::size_t n = 3 + s % 5, N = n + s % 7;
    const DenseMatrix m = generate({EnsembleKind::PartialCirculant, n, N}, Seed{s});
    // Recover the generator independently from the first row's shift candidates:
    // every row must equal some cyclic shift of row 0, and the shifts must differ.
    std::set<std::size_t> shifts;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t found = N;
      for (std::size_t d = 0; d < N && found == N; ++d) {
        bool same = true;
        for (std::size_t j = 0; j < N && same; ++j) same = m(i, j) == m(0, (j + N - d) % N);
        if (same) found = d;
      }
      REQUIRE(found < N);
      shifts.insert(found);
    }
    CHECK(shifts.size() == n);
  }
}

TEST_CASE("partial circulant sample matches its generator row") {
  const auto s = sample_partial_circulant(3, 5, Seed{4});
  REQUIRE(s.generator.size() == 5);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      CHECK(s.matrix(i, j) == s.generator[(j + 5 - s.row_shifts[i]) % 5]);
  bool any_negative = false;
  for (double g : s.generator) any_negative |= g < 0.0;
  const auto big = sample_partial_circulant(10, 400, Seed{4});
  for (double g : big.generator) any_negative |= g < 0.0;
  CHECK(any_negative);
}

TEST_CASE("density counts nonzero entries") {
  CHECK(density(DenseMatrix(2, 3, 1.0)) == 1.0);
  CHECK(density(DenseMatrix(2, 3, 0.0)) == 0.0);
  CHECK(density(DenseMatrix::identity(2)) == 0.5);
}

TEST_CASE("invalid specs are parameter errors") {
  CHECK_THROWS_AS(generate({EnsembleKind::Bernoulli, 2, 2, 1.5}, Seed{}), ParameterError);
  CHECK_THROWS_AS(generate({EnsembleKind::Bernoulli, 2, 2, -0.1}, Seed{}), ParameterError);
  CHECK_THROWS_AS(generate({EnsembleKind::PartialCirculant, 6, 5}, Seed{}), ParameterError);
  CHECK_THROWS_AS(generate({EnsembleKind::AbsNormal, 0, 5}, Seed{}), ParameterError);
  CHECK_THROWS_AS(parse_ensemble_kind("Gaussian"), ParameterError);
}

TEST_CASE("ensemble spec round-trips through JSON") {
  EnsembleSpec spec{EnsembleKind::Bernoulli, 7, 9, 0.25};
  nlohmann::json j = spec;
  const auto back = j.get<EnsembleSpec>();
  CHECK(back.kind == spec.kind);
  CHECK(back.n == 7);
  CHECK(back.N == 9);
  CHECK(back.p == 0.25);
  CHECK(parse_ensemble_kind(to_string(EnsembleKind::PartialCirculant)) ==
        EnsembleKind::PartialCirculant);
}
