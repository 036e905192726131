#include "sparse_sense/matgen.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "sparse_sense/error.hpp"

namespace sparse_sense {

namespace {

constexpr std::array<std::pair<EnsembleKind, std::string_view>, 6> kKindNames{{
    {EnsembleKind::AbsNormal, "AbsNormal"},
    {EnsembleKind::Uniform01, "Uniform01"},
    {EnsembleKind::Bernoulli, "Bernoulli"},
    {EnsembleKind::PartialCirculant, "PartialCirculant"},
    {EnsembleKind::AllOnes, "AllOnes"},
    {EnsembleKind::Identity, "Identity"},
}};

}  // namespace

std::string_view to_string(EnsembleKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

EnsembleKind parse_ensemble_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  throw ParameterError("unknown ensemble kind '" + std::string(name) + "'");
}

void EnsembleSpec::validate() const {
  if (n < 1 || N < 1) throw ParameterError("ensemble needs n >= 1 and N >= 1");
  if (kind == EnsembleKind::Bernoulli && !(p >= 0.0 && p <= 1.0)) {
    throw ParameterError("Bernoulli p must lie in [0, 1]");
  }
  if (kind == EnsembleKind::PartialCirculant && n > N) {
    throw ParameterError("partial circulant needs n <= N to sample distinct rows");
  }
  if (kind == EnsembleKind::Identity && n != N) {
    throw ParameterError("identity source needs n == N");
  }
}

void to_json(nlohmann::json& j, const EnsembleSpec& spec) {
  j = nlohmann::json{{"kind", std::string(to_string(spec.kind))}, {"n", spec.n}, {"N", spec.N}};
  if (spec.kind == EnsembleKind::Bernoulli) j["p"] = spec.p;
}

void from_json(const nlohmann::json& j, EnsembleSpec& spec) {
  for (const auto& [key, _] : j.items()) {
    if (key != "kind" && key != "n" && key != "N" && key != "p") {
      throw ParameterError("unknown ensemble key '" + key + "'");
    }
  }
  spec.kind = parse_ensemble_kind(j.at("kind").get<std::string>());
  spec.n = j.at("n").get<std::size_t>();
  spec.N = j.at("N").get<std::size_t>();
  spec.p = j.value("p", 0.5);
}

PartialCirculantSample sample_partial_circulant(std::size_t n, std::size_t N, Seed seed) {
  EnsembleSpec{EnsembleKind::PartialCirculant, n, N}.validate();
  Rng rng(seed);
  PartialCirculantSample out;
  out.generator.resize(N);
  for (double& g : out.generator) g = rng.standard_normal();
  out.row_shifts = rng.sample_without_replacement(N, n);
  out.matrix = DenseMatrix(n, N);
  for (std::size_t j = 0; j < N; ++j) {
    auto col = out.matrix.col(j);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t shift = out.row_shifts[i];
      col[i] = out.generator[(j + N - shift) % N];
    }
  }
  return out;
}

DenseMatrix generate(const EnsembleSpec& spec, Seed seed) {
  spec.validate();
  switch (spec.kind) {
    case EnsembleKind::AllOnes:
      return DenseMatrix(spec.n, spec.N, 1.0);
    case EnsembleKind::Identity:
      return DenseMatrix::identity(spec.n);
    case EnsembleKind::PartialCirculant:
      return sample_partial_circulant(spec.n, spec.N, seed).matrix;
    default:
      break;
  }
  DenseMatrix m(spec.n, spec.N);
  Rng rng(seed);
  auto data = m.data();
  switch (spec.kind) {
    case EnsembleKind::AbsNormal:
      for (double& v : data) v = std::fabs(rng.standard_normal());
      break;
    case EnsembleKind::Uniform01:
      for (double& v : data) v = rng.uniform_open01();
      break;
    case EnsembleKind::Bernoulli:
      // uniform_open01 < p: P = p exactly on the 2^-53 grid, 0 for p = 0, 1 for p = 1.
      for (double& v : data) v = rng.uniform_open01() < spec.p ? 1.0 : 0.0;
      break;
    default:
      break;
  }
  return m;
}

double density(const DenseMatrix& m) {
  const auto data = m.data();
  if (data.empty()) return 0.0;
  std::size_t nonzero = 0;
  for (double v : data) nonzero += std::fabs(v) > 0.0 ? 1 : 0;
  return static_cast<double>(nonzero) / static_cast<double>(data.size());
}

std::vector<double> normalize_columns(DenseMatrix& m) {
  std::vector<double> norms(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    auto col = m.col(j);
    double ss = 0.0;
    for (double v : col) ss += v * v;
    const double norm = std::sqrt(ss);
    if (!(norm > 0.0)) throw DegenerateColumnError(j);
    for (double& v : col) v /= norm;
    norms[j] = norm;
  }
  return norms;
}

}  // namespace sparse_sense
