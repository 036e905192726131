#include "sparse_sense/numkit.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "sparse_sense/error.hpp"

namespace sparse_sense {

namespace {

// Householder QR of a column-major m x p block, optionally with column
// pivoting. LAPACK conventions: R on and above the diagonal, reflector
// vectors below it with an implicit leading 1, H_k = I - tau_k v_k v_k^T.
struct QrFactor {
  std::size_t m = 0;
  std::size_t p = 0;
  std::vector<double> a;
  std::vector<double> tau;
  std::vector<std::size_t> perm;
  std::size_t rank = 0;

  double r(std::size_t i, std::size_t j) const { return a[j * m + i]; }
};

QrFactor householder_qr(std::vector<double> a, std::size_t m, std::size_t p, bool pivot) {
  QrFactor f;
  f.m = m;
  f.p = p;
  f.a = std::move(a);
  const std::size_t steps = std::min(m, p);
  f.tau.assign(steps, 0.0);
  f.perm.resize(p);
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});

  auto col = [&](std::size_t j) { return f.a.data() + j * m; };
  auto tail_norm = [&](std::size_t j, std::size_t from) {
    double ss = 0.0;
    const double* c = col(j);
    for (std::size_t i = from; i < m; ++i) ss += c[i] * c[i];
    return std::sqrt(ss);
  };

  std::vector<double> norms(p), ref_norms(p);
  if (pivot) {
    for (std::size_t j = 0; j < p; ++j) norms[j] = ref_norms[j] = tail_norm(j, 0);
  }
  const double recompute_threshold = std::sqrt(DBL_EPSILON);

  for (std::size_t k = 0; k < steps; ++k) {
    if (pivot) {
      std::size_t best = k;
      for (std::size_t j = k + 1; j < p; ++j) {
        if (norms[j] > norms[best]) best = j;
      }
      if (best != k) {
        std::swap_ranges(col(k), col(k) + m, col(best));
        std::swap(f.perm[k], f.perm[best]);
        std::swap(norms[k], norms[best]);
        std::swap(ref_norms[k], ref_norms[best]);
      }
    }

    double* x = col(k);
    const double alpha = x[k];
    double xnorm_ss = 0.0;
    for (std::size_t i = k + 1; i < m; ++i) xnorm_ss += x[i] * x[i];
    if (xnorm_ss == 0.0) {
      f.tau[k] = 0.0;
    } else {
      const double beta = -std::copysign(std::sqrt(alpha * alpha + xnorm_ss), alpha);
      f.tau[k] = (beta - alpha) / beta;
      const double scale = 1.0 / (alpha - beta);
      for (std::size_t i = k + 1; i < m; ++i) x[i] *= scale;
      x[k] = beta;
    }

    if (f.tau[k] != 0.0) {
      for (std::size_t j = k + 1; j < p; ++j) {
        double* c = col(j);
        double w = c[k];
        for (std::size_t i = k + 1; i < m; ++i) w += x[i] * c[i];
        w *= f.tau[k];
        c[k] -= w;
        for (std::size_t i = k + 1; i < m; ++i) c[i] -= w * x[i];
      }
    }

    if (pivot) {
      for (std::size_t j = k + 1; j < p; ++j) {
        if (norms[j] == 0.0) continue;
        const double ratio = std::fabs(col(j)[k]) / norms[j];
        double temp = std::max(0.0, 1.0 - ratio * ratio);
        const double rel = norms[j] / ref_norms[j];
        if (temp * rel * rel <= recompute_threshold) {
          norms[j] = ref_norms[j] = tail_norm(j, k + 1);
        } else {
          norms[j] *= std::sqrt(temp);
        }
      }
    }
  }

  double r00 = steps > 0 ? std::fabs(f.r(0, 0)) : 0.0;
  const double tol = 10.0 * static_cast<double>(std::max(m, p)) * DBL_EPSILON * r00;
  f.rank = 0;
  while (f.rank < steps && std::fabs(f.r(f.rank, f.rank)) > tol) ++f.rank;
  return f;
}

// v <- Q^T v
void apply_qt(const QrFactor& f, std::span<double> v) {
  for (std::size_t k = 0; k < f.tau.size(); ++k) {
    if (f.tau[k] == 0.0) continue;
    const double* x = f.a.data() + k * f.m;
    double w = v[k];
    for (std::size_t i = k + 1; i < f.m; ++i) w += x[i] * v[i];
    w *= f.tau[k];
    v[k] -= w;
    for (std::size_t i = k + 1; i < f.m; ++i) v[i] -= w * x[i];
  }
}

// v <- Q v
void apply_q(const QrFactor& f, std::span<double> v) {
  for (std::size_t kk = f.tau.size(); kk-- > 0;) {
    if (f.tau[kk] == 0.0) continue;
    const double* x = f.a.data() + kk * f.m;
    double w = v[kk];
    for (std::size_t i = kk + 1; i < f.m; ++i) w += x[i] * v[i];
    w *= f.tau[kk];
    v[kk] -= w;
    for (std::size_t i = kk + 1; i < f.m; ++i) v[i] -= w * x[i];
  }
}

// Solves the leading r x r upper-triangular system R z = b in place.
void back_substitute(const QrFactor& f, std::size_t r, std::span<double> b) {
  for (std::size_t ii = r; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t j = ii + 1; j < r; ++j) s -= f.r(ii, j) * b[j];
    b[ii] = s / f.r(ii, ii);
  }
}

}  // namespace

double l2_norm(std::span<const double> v) {
  double ss = 0.0;
  for (double x : v) ss += x * x;
  return std::sqrt(ss);
}

LeastSquaresResult lstsq_dense(DenseMatrix block, std::span<const double> y) {
  const std::size_t m = block.rows();
  const std::size_t p = block.cols();
  if (y.size() != m) throw DimensionError("lstsq: right-hand side has wrong length");

  LeastSquaresResult out;
  out.coefficients.assign(p, 0.0);
  out.residual.assign(y.begin(), y.end());

  if (p > 0) {
    const auto data = block.data();
    QrFactor f = householder_qr(std::vector<double>(data.begin(), data.end()), m, p, true);
    out.rank = f.rank;
    out.rank_deficient = f.rank < p;

    std::vector<double> qty(y.begin(), y.end());
    apply_qt(f, qty);
    std::vector<double> z(p, 0.0);
    const std::size_t r = f.rank;
    if (r == p) {
      std::copy_n(qty.begin(), p, z.begin());
      back_substitute(f, p, z);
    } else if (r > 0) {
      // Minimum-norm solution of [R11 R12] z = (Q^T y)_{0:r}: factor the
      // transpose M^T = Q2 R2, then z = Q2 [R2^{-T} b; 0].
      std::vector<double> mt(p * r, 0.0);  // p x r, column-major
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i; j < p; ++j) mt[i * p + j] = f.r(i, j);
      }
      QrFactor g = householder_qr(std::move(mt), p, r, false);
      std::vector<double> w(p, 0.0);
      for (std::size_t i = 0; i < r; ++i) {
        double s = qty[i];
        for (std::size_t j = 0; j < i; ++j) s -= g.r(j, i) * w[j];
        w[i] = s / g.r(i, i);
      }
      apply_q(g, w);
      z = std::move(w);
    }
    for (std::size_t i = 0; i < p; ++i) out.coefficients[f.perm[i]] = z[i];

    for (std::size_t j = 0; j < p; ++j) {
      const double c = out.coefficients[j];
      if (c == 0.0) continue;
      const auto colj = block.col(j);
      for (std::size_t i = 0; i < m; ++i) out.residual[i] -= c * colj[i];
    }
  }
  out.residual_norm = l2_norm(out.residual);
  return out;
}

LeastSquaresResult lstsq_on_support(const SensingMatrix& a, std::span<const std::size_t> support,
                                    std::span<const double> y) {
  if (y.size() != a.rows()) throw DimensionError("lstsq: right-hand side has wrong length");
  DenseMatrix block(a.rows(), support.size());
  for (std::size_t c = 0; c < support.size(); ++c) {
    if (support[c] >= a.cols()) throw DimensionError("lstsq: support index out of range");
    a.gather_column(support[c], block.col(c));
  }
  return lstsq_dense(std::move(block), y);
}

std::vector<double> symmetric_eigenvalues(const DenseMatrix& sym) {
  const std::size_t n = sym.rows();
  if (sym.cols() != n) throw DimensionError("eigenvalues need a square matrix");
  std::vector<double> eig;
  if (n == 0) return eig;
  if (n == 1) return {sym(0, 0)};
  if (n == 2) {
    const double a = sym(0, 0), b = sym(0, 1), d = sym(1, 1);
    const double mid = 0.5 * (a + d);
    const double rad = std::hypot(0.5 * (a - d), b);
    return {mid - rad, mid + rad};
  }
  if (n == 3) {
    const double a = sym(0, 0), b = sym(1, 1), c = sym(2, 2);
    const double d = sym(0, 1), e = sym(0, 2), f = sym(1, 2);
    const double off = d * d + e * e + f * f;
    if (off == 0.0) {
      eig = {a, b, c};
    } else {
      const double q = (a + b + c) / 3.0;
      const double p2 = (a - q) * (a - q) + (b - q) * (b - q) + (c - q) * (c - q) + 2.0 * off;
      const double p = std::sqrt(p2 / 6.0);
      const double ba = (a - q) / p, bb = (b - q) / p, bc = (c - q) / p;
      const double bd = d / p, be = e / p, bf = f / p;
      const double det = ba * (bb * bc - bf * bf) - bd * (bd * bc - bf * be) + be * (bd * bf - bb * be);
      const double r = std::clamp(det / 2.0, -1.0, 1.0);
      const double phi = std::acos(r) / 3.0;
      const double e1 = q + 2.0 * p * std::cos(phi);
      const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
      eig = {e1, 3.0 * q - e1 - e3, e3};
    }
    std::sort(eig.begin(), eig.end());
    return eig;
  }

  // Cyclic Jacobi.
  std::vector<double> a(sym.data().begin(), sym.data().end());
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[j * n + i]; };
  double total = 0.0;
  for (double v : a) total += v * v;
  const double target = 1e-24 * total;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < j; ++i) off += 2.0 * at(i, j) * at(i, j);
    if (off <= target) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  eig.resize(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::size_t num = n - k + i;
    // result * num / i is exact at every step; guard the multiplication.
    if (result > std::numeric_limits<std::size_t>::max() / num) {
      return std::numeric_limits<std::size_t>::max();
    }
    result = result * num / i;
  }
  return result;
}

double rip_epsilon(const SensingMatrix& a, std::size_t k) {
  const std::size_t N = a.cols();
  if (k < 1 || k > N) throw ParameterError("rip_epsilon needs 1 <= k <= N");
  const std::size_t count = binomial(N, k);
  if (count > kRipEnumerationLimit) {
    throw EnumerationLimitError("rip_epsilon would enumerate " + std::to_string(count) +
                                " supports (limit " + std::to_string(kRipEnumerationLimit) +
                                "); use a smaller matrix or sparsity");
  }

  const std::size_t n = a.rows();
  DenseMatrix cols(n, N);
  for (std::size_t j = 0; j < N; ++j) a.gather_column(j, cols.col(j));
  DenseMatrix gram(N, N);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i; j < N; ++j) {
      double s = 0.0;
      const auto ci = cols.col(i), cj = cols.col(j);
      for (std::size_t r = 0; r < n; ++r) s += ci[r] * cj[r];
      gram(i, j) = gram(j, i) = s;
    }
  }

  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  DenseMatrix sub(k, k);
  double worst = 0.0;
  for (;;) {
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t r = 0; r < k; ++r) sub(r, c) = gram(idx[r], idx[c]);
    const auto eig = symmetric_eigenvalues(sub);
    worst = std::max({worst, 1.0 - eig.front(), eig.back() - 1.0});

    // Next combination in lexicographic order.
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == N - k + (pos - 1)) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t q = pos; q < k; ++q) idx[q] = idx[q - 1] + 1;
  }
  return worst;
}

}  // namespace sparse_sense
