#include "sparse_sense/lpsolve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>

#include "sparse_sense/error.hpp"
#include "sparse_sense/rng.hpp"

namespace sparse_sense {

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::IterationLimit: return "iteration_limit";
    case LpStatus::NumericalFailure: return "numerical_failure";
  }
  return "?";
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr double kPerturbation = 1e-7;
constexpr double kThresholdPivot = 0.1;
constexpr double kDenseFill = 0.4;

struct SingularBasis {};

enum class VarState : unsigned char { Nonbasic, Basic, Retired };

class RevisedSimplex {
 public:
  RevisedSimplex(const SensingMatrix& a, std::span<const double> y, const LpOptions& opts)
      : a_(a), m_(a.rows()), n_(a.cols()), opts_(opts) {
    if (opts_.max_iters == 0) opts_.max_iters = 50 * (m_ + n_);
    opts_.pricing_window = std::clamp<std::size_t>(opts_.pricing_window, 1, std::max<std::size_t>(n_, 1));
    sign_.resize(m_);
    b_.resize(m_);
    y_scale_ = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      sign_[i] = y[i] < 0.0 ? -1.0 : 1.0;
      b_[i] = std::fabs(y[i]);
      y_scale_ = std::max(y_scale_, b_[i]);
    }
    rhs_ = b_;
    state_.assign(n_ + m_, VarState::Nonbasic);
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;
      state_[n_ + i] = VarState::Basic;
    }
    retire_forced_columns();
    lu_.assign(m_ * m_, 0.0);
    perm_.resize(m_);
    work_.resize(m_);
    pi_.resize(m_);
    sigma_.resize(m_);
  }

  LpSolution run() {
    LpSolution sol;
    try {
      refactor();
      LpStatus st = iterate(1);
      sol.phase1_iterations = iterations_;
      if (st == LpStatus::Optimal) {
        double infeas = 0.0;
        for (std::size_t r = 0; r < m_; ++r) {
          if (is_artificial(basis_[r])) infeas = std::max(infeas, xb_[r]);
        }
        if (infeas > opts_.feas_tol * y_scale_) {
          st = LpStatus::Infeasible;
        } else {
          drive_out_artificials();
          perturb_rhs();
          st = iterate(2);
          rhs_ = b_;
          refactor();
          if (st == LpStatus::Optimal && !primal_feasible()) {
            st = dual_cleanup();
            if (st == LpStatus::Optimal) st = iterate(2);
          }
        }
      }
      sol.status = st;
      refactor();
    } catch (const SingularBasis&) {
      sol.status = LpStatus::NumericalFailure;
      sol.iterations = iterations_;
      sol.x.assign(n_, 0.0);
      return sol;
    }
    finish(sol);
    return sol;
  }

 private:
  bool is_artificial(std::size_t var) const { return var >= n_; }

  // A row with y_i = 0 whose entries all share one sign forces every column
  // touching it to zero. Those columns are retired before the first pivot.
  void retire_forced_columns() {
    std::vector<char> pos(m_, 0), neg(m_, 0);
    std::vector<double> col(m_);
    for (std::size_t j = 0; j < n_; ++j) {
      a_.gather_column(j, col);
      for (std::size_t i = 0; i < m_; ++i) {
        if (col[i] > 0.0) pos[i] = 1;
        if (col[i] < 0.0) neg[i] = 1;
      }
    }
    forcing_.assign(m_, 0);
    bool any = false;
    for (std::size_t i = 0; i < m_; ++i) {
      forcing_[i] = b_[i] == 0.0 && !(pos[i] && neg[i]);
      any = any || forcing_[i];
    }
    if (!any) return;
    for (std::size_t j = 0; j < n_; ++j) {
      a_.gather_column(j, col);
      for (std::size_t i = 0; i < m_; ++i) {
        if (forcing_[i] && col[i] != 0.0) {
          state_[j] = VarState::Retired;
          break;
        }
      }
    }
  }

  // Column of variable `var` in the row-flipped system, written to `out`.
  void load_column(std::size_t var, std::span<double> out) const {
    if (is_artificial(var)) {
      std::fill(out.begin(), out.end(), 0.0);
      out[var - n_] = 1.0;
      return;
    }
    a_.gather_column(var, out);
    for (std::size_t i = 0; i < m_; ++i) out[i] *= sign_[i];
  }

  double& lu(std::size_t i, std::size_t j) { return lu_[j * m_ + i]; }

  // Factors B, with columns reordered by `colperm_` and rows by `perm_`, as
  // L U. Each step takes the active column with the fewest nonzeros and,
  // within it, the row with the fewest nonzeros among entries at least
  // kThresholdPivot times the column maximum. Sparse factors are kept as
  // index lists; factors with heavy fill stay dense.
  void refactor() {
    for (std::size_t r = 0; r < m_; ++r) load_column(basis_[r], {lu_.data() + r * m_, m_});
    std::vector<std::size_t> row_cnt(m_, 0), col_cnt(m_, 0);
    for (std::size_t j = 0; j < m_; ++j) {
      for (std::size_t i = 0; i < m_; ++i) {
        if (lu(i, j) != 0.0) {
          ++row_cnt[i];
          ++col_cnt[j];
        }
      }
    }
    colperm_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) perm_[i] = colperm_[i] = i;

    std::vector<std::size_t> nz;
    for (std::size_t k = 0; k < m_; ++k) {
      std::size_t c = k;
      for (std::size_t j = k + 1; j < m_; ++j) {
        if (col_cnt[j] < col_cnt[c]) c = j;
      }
      if (c != k) {
        std::swap_ranges(lu_.begin() + static_cast<std::ptrdiff_t>(k * m_),
                         lu_.begin() + static_cast<std::ptrdiff_t>((k + 1) * m_),
                         lu_.begin() + static_cast<std::ptrdiff_t>(c * m_));
        std::swap(col_cnt[k], col_cnt[c]);
        std::swap(colperm_[k], colperm_[c]);
      }
      double colmax = 0.0;
      for (std::size_t i = k; i < m_; ++i) colmax = std::max(colmax, std::fabs(lu(i, k)));
      if (colmax < 1e-13) throw SingularBasis{};
      std::size_t p = kNone;
      for (std::size_t i = k; i < m_; ++i) {
        const double v = std::fabs(lu(i, k));
        if (v < kThresholdPivot * colmax) continue;
        if (p == kNone || row_cnt[i] < row_cnt[p] ||
            (row_cnt[i] == row_cnt[p] && v > std::fabs(lu(p, k)))) {
          p = i;
        }
      }
      if (p != k) {
        for (std::size_t j = 0; j < m_; ++j) std::swap(lu(k, j), lu(p, j));
        std::swap(row_cnt[k], row_cnt[p]);
        std::swap(perm_[k], perm_[p]);
      }
      for (std::size_t j = k + 1; j < m_; ++j) {
        if (lu(k, j) != 0.0) --col_cnt[j];
      }
      const double inv = 1.0 / lu(k, k);
      double* colk = lu_.data() + k * m_;
      nz.clear();
      for (std::size_t i = k + 1; i < m_; ++i) {
        if (colk[i] != 0.0) {
          colk[i] *= inv;
          --row_cnt[i];
          nz.push_back(i);
        }
      }
      if (nz.empty()) continue;
      for (std::size_t j = k + 1; j < m_; ++j) {
        double* colj = lu_.data() + j * m_;
        const double ukj = colj[k];
        if (ukj == 0.0) continue;
        for (std::size_t i : nz) {
          if (colj[i] == 0.0) {
            ++row_cnt[i];
            ++col_cnt[j];
          }
          colj[i] -= colk[i] * ukj;
        }
      }
    }

    // Row swaps move earlier multipliers, so the factors are read off only
    // once elimination is complete.
    std::size_t fill = 0;
    for (double v : lu_) fill += v != 0.0;
    dense_factors_ = fill > kDenseFill * static_cast<double>(m_ * m_);
    l_start_.assign(1, 0);
    l_idx_.clear();
    l_val_.clear();
    u_start_.assign(1, 0);
    u_idx_.clear();
    u_val_.clear();
    u_diag_.resize(m_);
    for (std::size_t k = 0; k < m_; ++k) {
      const double* colk = lu_.data() + k * m_;
      u_diag_[k] = colk[k];
      if (dense_factors_) continue;
      for (std::size_t i = k + 1; i < m_; ++i) {
        if (colk[i] != 0.0) {
          l_idx_.push_back(static_cast<std::uint32_t>(i));
          l_val_.push_back(colk[i]);
        }
      }
      l_start_.push_back(l_idx_.size());
      for (std::size_t i = 0; i < k; ++i) {
        if (colk[i] != 0.0) {
          u_idx_.push_back(static_cast<std::uint32_t>(i));
          u_val_.push_back(colk[i]);
        }
      }
      u_start_.push_back(u_idx_.size());
    }
    eta_row_.clear();
    eta_pivot_.clear();
    eta_start_.assign(1, 0);
    eta_idx_.clear();
    eta_val_.clear();
    xb_ = rhs_;
    ftran(xb_);
  }

  // v <- B^{-1} v
  void ftran(std::vector<double>& v) {
    for (std::size_t i = 0; i < m_; ++i) work_[i] = v[perm_[i]];
    if (dense_factors_) {
      for (std::size_t k = 0; k < m_; ++k) {
        const double wk = work_[k];
        if (wk == 0.0) continue;
        const double* colk = lu_.data() + k * m_;
        for (std::size_t i = k + 1; i < m_; ++i) work_[i] -= colk[i] * wk;
      }
      for (std::size_t k = m_; k-- > 0;) {
        const double* colk = lu_.data() + k * m_;
        work_[k] /= colk[k];
        const double wk = work_[k];
        if (wk == 0.0) continue;
        for (std::size_t i = 0; i < k; ++i) work_[i] -= colk[i] * wk;
      }
    } else {
      for (std::size_t k = 0; k < m_; ++k) {
        const double wk = work_[k];
        if (wk == 0.0) continue;
        for (std::size_t e = l_start_[k]; e < l_start_[k + 1]; ++e) work_[l_idx_[e]] -= l_val_[e] * wk;
      }
      for (std::size_t k = m_; k-- > 0;) {
        work_[k] /= u_diag_[k];
        const double wk = work_[k];
        if (wk == 0.0) continue;
        for (std::size_t e = u_start_[k]; e < u_start_[k + 1]; ++e) work_[u_idx_[e]] -= u_val_[e] * wk;
      }
    }
    for (std::size_t k = 0; k < m_; ++k) v[colperm_[k]] = work_[k];
    for (std::size_t t = 0; t < eta_row_.size(); ++t) {
      const std::size_t r = eta_row_[t];
      const double wr = v[r] / eta_pivot_[t];
      if (wr != 0.0) {
        for (std::size_t e = eta_start_[t]; e < eta_start_[t + 1]; ++e) v[eta_idx_[e]] -= eta_val_[e] * wr;
      }
      v[r] = wr;
    }
  }

  // w^T <- w^T B^{-1}
  void btran(std::vector<double>& w) {
    for (std::size_t t = eta_row_.size(); t-- > 0;) {
      const std::size_t r = eta_row_[t];
      double s = w[r];
      for (std::size_t e = eta_start_[t]; e < eta_start_[t + 1]; ++e) s -= w[eta_idx_[e]] * eta_val_[e];
      w[r] = s / eta_pivot_[t];
    }
    for (std::size_t k = 0; k < m_; ++k) work_[k] = w[colperm_[k]];
    if (dense_factors_) {
      for (std::size_t k = 0; k < m_; ++k) {
        const double* colk = lu_.data() + k * m_;
        double s = work_[k];
        for (std::size_t i = 0; i < k; ++i) s -= colk[i] * work_[i];
        work_[k] = s / colk[k];
      }
      for (std::size_t k = m_; k-- > 0;) {
        const double* colk = lu_.data() + k * m_;
        double s = work_[k];
        for (std::size_t i = k + 1; i < m_; ++i) s -= colk[i] * work_[i];
        work_[k] = s;
      }
    } else {
      for (std::size_t k = 0; k < m_; ++k) {
        double s = work_[k];
        for (std::size_t e = u_start_[k]; e < u_start_[k + 1]; ++e) s -= u_val_[e] * work_[u_idx_[e]];
        work_[k] = s / u_diag_[k];
      }
      for (std::size_t k = m_; k-- > 0;) {
        double s = work_[k];
        for (std::size_t e = l_start_[k]; e < l_start_[k + 1]; ++e) s -= l_val_[e] * work_[l_idx_[e]];
        work_[k] = s;
      }
    }
    for (std::size_t i = 0; i < m_; ++i) w[perm_[i]] = work_[i];
  }

  // Records the pivot on row r with entering column d = B^{-1} a_q; the
  // pivot entry itself is kept apart from the off-pivot nonzeros.
  void push_eta(std::size_t r, const std::vector<double>& d) {
    eta_row_.push_back(r);
    eta_pivot_.push_back(d[r]);
    for (std::size_t i = 0; i < m_; ++i) {
      if (i != r && d[i] != 0.0) {
        eta_idx_.push_back(static_cast<std::uint32_t>(i));
        eta_val_.push_back(d[i]);
      }
    }
    eta_start_.push_back(eta_idx_.size());
  }

  // Shifts the right-hand side so every structural basic variable moves up
  // by a distinct amount of order 1e-7 * ||y||_inf. The current basis stays
  // feasible and the ties that make the optimal vertex degenerate are broken.
  void perturb_rhs() {
    std::vector<double> shift(m_, 0.0), col(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      if (is_artificial(basis_[r])) continue;
      const double u = 1.0 + static_cast<double>(mix64(r) >> 11) * 0x1.0p-53;
      const double delta = kPerturbation * y_scale_ * u;
      load_column(basis_[r], col);
      for (std::size_t i = 0; i < m_; ++i) shift[i] += delta * col[i];
    }
    for (std::size_t i = 0; i < m_; ++i) rhs_[i] = b_[i] + shift[i];
    refactor();
  }

  bool primal_feasible() const {
    for (std::size_t r = 0; r < m_; ++r) {
      if (xb_[r] < -opts_.feas_tol * y_scale_) return false;
    }
    return true;
  }

  double artificial_mass() const {
    double total = 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      if (is_artificial(basis_[r])) total += std::max(xb_[r], 0.0);
    }
    return total;
  }

  double cost(std::size_t var, int phase) const {
    if (phase == 1) return is_artificial(var) ? 1.0 : 0.0;
    return is_artificial(var) ? 0.0 : 1.0;
  }

  // sigma = S pi for the current basis and phase costs.
  void compute_prices(int phase) {
    for (std::size_t r = 0; r < m_; ++r) pi_[r] = cost(basis_[r], phase);
    btran(pi_);
    for (std::size_t i = 0; i < m_; ++i) sigma_[i] = sign_[i] * pi_[i];
  }

  double reduced_cost(std::size_t j, int phase) const {
    return cost(j, phase) - a_.dot_column(j, sigma_);
  }

  std::size_t price(int phase) {
    if (bland_) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (state_[j] == VarState::Nonbasic && reduced_cost(j, phase) < -opts_.rc_tol) return j;
      }
      return kNone;
    }
    std::size_t best = kNone;
    double best_val = -opts_.rc_tol;
    std::size_t scanned = 0;
    std::size_t pos = cursor_;
    while (scanned < n_) {
      const std::size_t chunk = std::min(opts_.pricing_window, n_ - scanned);
      for (std::size_t c = 0; c < chunk; ++c) {
        const std::size_t j = pos;
        pos = pos + 1 == n_ ? 0 : pos + 1;
        if (state_[j] != VarState::Nonbasic) continue;
        const double d = reduced_cost(j, phase);
        if (d < best_val) {
          best_val = d;
          best = j;
        }
      }
      scanned += chunk;
      if (best != kNone) break;
    }
    cursor_ = pos;
    return best;
  }

  std::size_t ratio_test(const std::vector<double>& d, int phase) const {
    std::size_t best = kNone;
    double best_theta = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m_; ++i) {
      double theta;
      if (phase == 2 && is_artificial(basis_[i])) {
        if (std::fabs(d[i]) <= opts_.pivot_tol) continue;
        theta = 0.0;
      } else {
        if (d[i] <= opts_.pivot_tol) continue;
        theta = std::max(xb_[i], 0.0) / d[i];
      }
      const double tie = 1e-12 * (1.0 + best_theta);
      bool take = false;
      if (best == kNone || theta < best_theta - tie) {
        take = true;
      } else if (theta <= best_theta + tie) {
        take = bland_ ? basis_[i] < basis_[best] : std::fabs(d[i]) > std::fabs(d[best]);
      }
      if (take) {
        best = i;
        best_theta = std::min(theta, best_theta);
      }
    }
    return best;
  }

  void pivot(std::size_t r, std::size_t q, std::vector<double>& d, double theta) {
    if (theta != 0.0) {
      for (std::size_t i = 0; i < m_; ++i) xb_[i] -= theta * d[i];
    }
    xb_[r] = theta;
    const std::size_t leaving = basis_[r];
    state_[leaving] = is_artificial(leaving) ? VarState::Retired : VarState::Nonbasic;
    basis_[r] = q;
    state_[q] = VarState::Basic;
    push_eta(r, d);
    ++iterations_;
    if (theta <= 1e-12) {
      ++degenerate_run_;
    } else {
      degenerate_run_ = 0;
    }
    bland_ = degenerate_run_ >= opts_.bland_after;
  }

  LpStatus iterate(int phase) {
    degenerate_run_ = 0;
    bland_ = false;
    bool retried = false;
    std::vector<double> d(m_);
    for (;;) {
      if (phase == 1 && artificial_mass() <= opts_.feas_tol * y_scale_) return LpStatus::Optimal;
      if (iterations_ >= opts_.max_iters) return LpStatus::IterationLimit;
      if (eta_row_.size() >= opts_.refactor_interval) refactor();

      compute_prices(phase);
      const std::size_t q = price(phase);
      if (q == kNone) return LpStatus::Optimal;

      load_column(q, d);
      ftran(d);
      const std::size_t r = ratio_test(d, phase);
      if (r == kNone) {
        // Unbounded ray with c >= 0 is impossible; the basis has drifted.
        if (retried || eta_row_.empty()) return LpStatus::NumericalFailure;
        refactor();
        retried = true;
        continue;
      }
      retried = false;
      const double theta = (phase == 2 && is_artificial(basis_[r])) ? 0.0 : std::max(xb_[r], 0.0) / d[r];
      pivot(r, q, d, theta);
    }
  }

  // Dual simplex passes from a dual-feasible basis whose primal values went
  // slightly negative once the perturbation was removed.
  LpStatus dual_cleanup() {
    std::vector<double> rho(m_), d(m_);
    for (;;) {
      std::size_t r = kNone;
      double worst = -opts_.feas_tol * y_scale_;
      for (std::size_t i = 0; i < m_; ++i) {
        if (!is_artificial(basis_[i]) && xb_[i] < worst) {
          worst = xb_[i];
          r = i;
        }
      }
      if (r == kNone) return LpStatus::Optimal;
      if (iterations_ >= opts_.max_iters) return LpStatus::IterationLimit;
      if (eta_row_.size() >= opts_.refactor_interval) {
        refactor();
        continue;
      }
      compute_prices(2);
      std::vector<double> prices = sigma_;
      std::fill(rho.begin(), rho.end(), 0.0);
      rho[r] = 1.0;
      btran(rho);
      for (std::size_t i = 0; i < m_; ++i) sigma_[i] = sign_[i] * rho[i];
      std::size_t q = kNone;
      double best_ratio = std::numeric_limits<double>::infinity();
      double best_alpha = 0.0;
      for (std::size_t j = 0; j < n_; ++j) {
        if (state_[j] != VarState::Nonbasic) continue;
        const double alpha = a_.dot_column(j, sigma_);
        if (alpha >= -opts_.pivot_tol) continue;
        const double dj = std::max(1.0 - a_.dot_column(j, prices), 0.0);
        const double ratio = dj / -alpha;
        const double tie = 1e-12 * (1.0 + best_ratio);
        if (q == kNone || ratio < best_ratio - tie ||
            (ratio <= best_ratio + tie && -alpha > best_alpha)) {
          q = j;
          best_ratio = std::min(ratio, best_ratio);
          best_alpha = -alpha;
        }
      }
      if (q == kNone) return LpStatus::NumericalFailure;
      load_column(q, d);
      ftran(d);
      if (d[r] >= -opts_.pivot_tol) return LpStatus::NumericalFailure;
      pivot(r, q, d, xb_[r] / d[r]);
    }
  }

  // Basic artificials at zero after phase 1: swap in any structural column
  // with a usable entry in that row; rows with none are redundant.
  void drive_out_artificials() {
    std::vector<double> rho(m_), d(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      if (eta_row_.size() >= opts_.refactor_interval) refactor();
      std::fill(rho.begin(), rho.end(), 0.0);
      rho[r] = 1.0;
      btran(rho);
      for (std::size_t i = 0; i < m_; ++i) sigma_[i] = sign_[i] * rho[i];
      std::size_t best = kNone;
      double best_abs = 1e-9;
      for (std::size_t j = 0; j < n_; ++j) {
        if (state_[j] != VarState::Nonbasic) continue;
        const double v = std::fabs(a_.dot_column(j, sigma_));
        if (v > best_abs) {
          best_abs = v;
          best = j;
        }
      }
      if (best == kNone) continue;
      load_column(best, d);
      ftran(d);
      pivot(r, best, d, 0.0);
    }
  }

  // Retired columns never entered pricing. A forcing row has y_i = 0 and
  // entries of one sign, so moving its price against that sign raises the
  // reduced cost of every column touching it without changing the dual
  // objective; do that until each retired column prices out.
  void price_out_retired() {
    std::vector<double> col(m_);
    for (std::size_t j = 0; j < n_; ++j) {
      if (state_[j] != VarState::Retired) continue;
      const double rc = reduced_cost(j, 2);
      if (rc >= 0.0) continue;
      a_.gather_column(j, col);
      std::size_t row = m_;
      for (std::size_t i = 0; i < m_; ++i) {
        if (forcing_[i] && col[i] != 0.0 && (row == m_ || std::fabs(col[i]) > std::fabs(col[row])))
          row = i;
      }
      sigma_[row] += (rc - opts_.rc_tol) / col[row];
    }
  }

  void finish(LpSolution& sol) {
    sol.iterations = iterations_;
    sol.x.assign(n_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      if (!is_artificial(basis_[r])) {
        sol.x[basis_[r]] = xb_[r];
        sol.basis.push_back(basis_[r]);
      }
    }
    std::sort(sol.basis.begin(), sol.basis.end());

    // Round-off below the nonnegativity tolerance is cleared to zero.
    for (double& v : sol.x) {
      if (v < 0.0 && v > -opts_.feas_tol * y_scale_) v = 0.0;
    }
    sol.objective = 0.0;
    for (double v : sol.x) sol.objective += v;
    sol.min_x = sol.x.empty() ? 0.0 : *std::min_element(sol.x.begin(), sol.x.end());

    std::vector<double> ax(m_);
    a_.matvec(sol.x, ax);
    sol.max_residual = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      sol.max_residual = std::max(sol.max_residual, std::fabs(ax[i] - sign_[i] * b_[i]));
    }

    compute_prices(2);
    price_out_retired();
    sol.duals = sigma_;
    sol.min_reduced_cost = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n_; ++j) {
      sol.min_reduced_cost = std::min(sol.min_reduced_cost, reduced_cost(j, 2));
    }

    if (sol.status == LpStatus::Optimal &&
        (sol.max_residual > opts_.feas_tol * y_scale_ || sol.min_x < -1e-10)) {
      sol.status = LpStatus::NumericalFailure;
    }
  }

  const SensingMatrix& a_;
  std::size_t m_;
  std::size_t n_;
  LpOptions opts_;
  double y_scale_;
  std::vector<double> sign_;
  std::vector<double> b_;
  std::vector<double> rhs_;  // b_, or b_ shifted while perturbed
  std::vector<VarState> state_;
  std::vector<char> forcing_;  // rows that pinned columns to zero in presolve
  std::vector<std::size_t> basis_;
  std::vector<double> xb_;
  std::vector<double> lu_;
  std::vector<std::size_t> perm_;     // factor row position -> constraint row
  std::vector<std::size_t> colperm_;  // factor column position -> basis slot
  std::vector<std::size_t> l_start_, u_start_, eta_start_;
  std::vector<std::uint32_t> l_idx_, u_idx_, eta_idx_;
  std::vector<double> l_val_, u_val_, u_diag_, eta_val_, eta_pivot_;
  std::vector<std::size_t> eta_row_;
  bool dense_factors_ = false;
  std::vector<double> work_, pi_, sigma_;
  std::size_t iterations_ = 0;
  std::size_t cursor_ = 0;
  std::size_t degenerate_run_ = 0;
  bool bland_ = false;
};

}  // namespace

LpSolution solve(const SensingMatrix& a, std::span<const double> y, const LpOptions& opts) {
  if (y.size() != a.rows()) throw DimensionError("LP right-hand side has wrong length");
  if (a.rows() == 0) throw DimensionError("LP needs at least one constraint");
  const auto start = std::chrono::steady_clock::now();
  RevisedSimplex simplex(a, y, opts);
  LpSolution sol = simplex.run();
  sol.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return sol;
}

RecoveryEstimate recover_l1(const SensingMatrix& phi, std::span<const double> y,
                            const LpOptions& opts) {
  LpSolution sol = solve(phi, y, opts);
  RecoveryEstimate est;
  est.xhat = std::move(sol.x);
  est.iterations = sol.iterations;
  switch (sol.status) {
    case LpStatus::Optimal: est.halt = HaltReason::Optimal; break;
    case LpStatus::Infeasible: est.halt = HaltReason::Infeasible; break;
    case LpStatus::IterationLimit: est.halt = HaltReason::IterationLimit; break;
    case LpStatus::NumericalFailure: est.halt = HaltReason::NumericalFailure; break;
  }
  return est;
}

}  // namespace sparse_sense
