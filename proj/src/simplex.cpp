// SPDX-License-Identifier: Apache-2.0

#include "tfmp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tfmp/errors.hpp"

namespace tfmp {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "Optimal";
    case LpStatus::kInfeasible:
      return "Infeasible";
    case LpStatus::kUnbounded:
      break;
  }
  return "Unbounded";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDegenerateStep = 1e-12;

// Dense bounded-variable tableau. Variables are the structural columns, one
// slack per row (a.x + sigma s = b, s >= 0) and optional artificials.
class DenseSimplex {
 public:
  DenseSimplex(const ConstraintSystem& sys, const SimplexOptions& options)
      : sys_(sys), opt_(options), m_(static_cast<int>(sys.rows.size())), n_(sys.num_columns) {
    for (int j = 0; j < n_; ++j) {
      if (!std::isfinite(sys.lower[j]) || !std::isfinite(sys.upper[j])) {
        throw std::invalid_argument("solve_lp requires finite column bounds");
      }
    }
    setup();
  }

  LpSolution solve() {
    LpSolution sol;
    if (num_artificial_ > 0) {
      std::vector<double> phase1(total_, 0.0);
      for (int k = n_ + m_; k < total_; ++k) phase1[k] = 1.0;
      run_phase(phase1);
      recompute_basics();
      double infeasibility = 0.0;
      for (int k = n_ + m_; k < total_; ++k) infeasibility += x_[k];
      if (infeasibility > opt_.feasibility_tol) {
        sol.status = LpStatus::kInfeasible;
        sol.iterations = iterations_;
        return sol;
      }
      retire_artificials();
    }
    std::vector<double> phase2(total_, 0.0);
    std::copy(sys_.cost.begin(), sys_.cost.end(), phase2.begin());
    bool bounded = run_phase(phase2);
    recompute_basics();

    sol.status = bounded ? LpStatus::kOptimal : LpStatus::kUnbounded;
    sol.iterations = iterations_;
    sol.values.assign(x_.begin(), x_.begin() + n_);
    for (int j = 0; j < n_; ++j) {
      double& v = sol.values[j];
      v = std::clamp(v, sys_.lower[j], sys_.upper[j]);
      const double r = std::round(v);
      if (std::fabs(v - r) < 1e-9) v = r;
    }
    sol.objective = sys_.objective_value(sol.values);
    sol.basis = basis_;
    return sol;
  }

 private:
  double& at(int row, int col) { return tab_[static_cast<std::size_t>(row) * total_ + col]; }

  void setup() {
    x_.assign(n_, 0.0);
    lo_.assign(sys_.lower.begin(), sys_.lower.end());
    up_.assign(sys_.upper.begin(), sys_.upper.end());
    for (int j = 0; j < n_; ++j) x_[j] = lo_[j];

    sigma_.resize(m_);
    std::vector<double> residual(m_);
    std::vector<int> needs_artificial;
    for (int i = 0; i < m_; ++i) {
      const Row& row = sys_.rows[i];
      residual[i] = row.rhs - sys_.activity(i, x_);
      sigma_[i] = row.sense == Sense::kGreaterEqual ? -1.0 : 1.0;
      const bool fits = row.sense == Sense::kEqual ? std::fabs(residual[i]) <= 1e-12
                                                  : sigma_[i] * residual[i] >= 0.0;
      if (!fits) needs_artificial.push_back(i);
    }
    num_artificial_ = static_cast<int>(needs_artificial.size());
    total_ = n_ + m_ + num_artificial_;

    // Slack bounds.
    for (int i = 0; i < m_; ++i) {
      lo_.push_back(0.0);
      up_.push_back(sys_.rows[i].sense == Sense::kEqual ? 0.0 : kInf);
      x_.push_back(0.0);
    }
    artificial_row_.assign(m_, -1);
    tau_.assign(m_, 0.0);
    for (int k = 0; k < num_artificial_; ++k) {
      const int i = needs_artificial[k];
      artificial_row_[i] = n_ + m_ + k;
      tau_[i] = residual[i] >= 0.0 ? 1.0 : -1.0;
      lo_.push_back(0.0);
      up_.push_back(kInf);
      x_.push_back(0.0);
    }

    tab_.assign(static_cast<std::size_t>(m_) * total_, 0.0);
    basis_.assign(m_, -1);
    row_of_.assign(total_, -1);
    for (int i = 0; i < m_; ++i) {
      int basic;
      double coef;
      if (artificial_row_[i] >= 0) {
        basic = artificial_row_[i];
        coef = tau_[i];
      } else {
        basic = n_ + i;
        coef = sigma_[i];
      }
      for (const auto& e : sys_.rows[i].entries) at(i, e.column) += e.coef / coef;
      at(i, n_ + i) = sigma_[i] / coef;
      if (artificial_row_[i] >= 0) at(i, artificial_row_[i]) = 1.0;
      basis_[i] = basic;
      row_of_[basic] = i;
      x_[basic] = residual[i] / coef;
    }
  }

  // Basic values from scratch: x_B = B^-1 (b - N x_N). Column n+i of the
  // tableau is B^-1 sigma_i e_i.
  void recompute_basics() {
    std::vector<double> rhs(m_);
    for (int i = 0; i < m_; ++i) {
      double r = sys_.rows[i].rhs;
      for (const auto& e : sys_.rows[i].entries) {
        if (row_of_[e.column] < 0) r -= e.coef * x_[e.column];
      }
      if (row_of_[n_ + i] < 0) r -= sigma_[i] * x_[n_ + i];
      const int art = artificial_row_[i];
      if (art >= 0 && row_of_[art] < 0) r -= tau_[i] * x_[art];
      rhs[i] = r;
    }
    for (int r = 0; r < m_; ++r) {
      double v = 0.0;
      for (int i = 0; i < m_; ++i) v += at(r, n_ + i) * sigma_[i] * rhs[i];
      x_[basis_[r]] = v;
    }
  }

  void price(const std::vector<double>& cost) {
    d_ = cost;
    for (int r = 0; r < m_; ++r) {
      const double cb = cost[basis_[r]];
      if (cb == 0.0) continue;
      for (int j = 0; j < total_; ++j) d_[j] -= cb * at(r, j);
    }
    for (int r = 0; r < m_; ++r) d_[basis_[r]] = 0.0;
  }

  // Returns false when the phase objective is unbounded.
  bool run_phase(const std::vector<double>& cost) {
    price(cost);
    int streak = 0;
    while (true) {
      const bool bland = streak >= opt_.degeneracy_streak;

      int q = -1;
      double dir = 0.0;
      double best = 0.0;
      for (int j = 0; j < total_; ++j) {
        if (row_of_[j] >= 0 || lo_[j] == up_[j]) continue;
        double step = 0.0;
        if (d_[j] < -opt_.optimality_tol && x_[j] < up_[j]) {
          step = 1.0;
        } else if (d_[j] > opt_.optimality_tol && x_[j] > lo_[j]) {
          step = -1.0;
        } else {
          continue;
        }
        if (bland) {
          q = j;
          dir = step;
          break;
        }
        if (std::fabs(d_[j]) > best) {
          best = std::fabs(d_[j]);
          q = j;
          dir = step;
        }
      }
      if (q < 0) return true;

      if (++iterations_ > opt_.max_iterations) {
        throw CycleLimit("simplex exceeded " + std::to_string(opt_.max_iterations) + " iterations");
      }

      // Ratio test: x_B moves by rate * theta with rate = -dir * alpha.
      double theta = up_[q] - lo_[q];
      int leave_row = -1;
      double leave_alpha = 0.0;
      for (int r = 0; r < m_; ++r) {
        const double alpha = at(r, q);
        if (std::fabs(alpha) < opt_.pivot_tol) continue;
        const int v = basis_[r];
        const double rate = -dir * alpha;
        double limit;
        if (rate < 0.0) {
          if (!std::isfinite(lo_[v])) continue;
          limit = (x_[v] - lo_[v]) / -rate;
        } else {
          if (!std::isfinite(up_[v])) continue;
          limit = (up_[v] - x_[v]) / rate;
        }
        limit = std::max(limit, 0.0);
        bool take = false;
        if (leave_row < 0) {
          take = limit < theta;
        } else if (limit < theta - kDegenerateStep) {
          take = true;
        } else if (limit <= theta + kDegenerateStep) {
          take = bland ? v < basis_[leave_row] : std::fabs(alpha) > std::fabs(leave_alpha);
        }
        if (take) {
          theta = std::min(theta, limit);
          leave_row = r;
          leave_alpha = alpha;
        }
      }
      if (!std::isfinite(theta)) return false;

      streak = theta <= kDegenerateStep ? streak + 1 : 0;

      for (int r = 0; r < m_; ++r) {
        const double alpha = at(r, q);
        if (alpha != 0.0) x_[basis_[r]] -= dir * alpha * theta;
      }
      if (leave_row < 0) {
        x_[q] = dir > 0.0 ? up_[q] : lo_[q];
        continue;
      }
      x_[q] += dir * theta;
      const int leaving = basis_[leave_row];
      const double rate = -dir * at(leave_row, q);
      x_[leaving] = rate < 0.0 ? lo_[leaving] : up_[leaving];
      pivot(leave_row, q);
    }
  }

  void pivot(int r, int q) {
    const double inv = 1.0 / at(r, q);
    double* prow = &at(r, 0);
    for (int j = 0; j < total_; ++j) prow[j] *= inv;
    prow[q] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &at(i, 0);
      const double f = row[q];
      if (f == 0.0) continue;
      for (int j = 0; j < total_; ++j) {
        if (prow[j] != 0.0) row[j] -= f * prow[j];
      }
      row[q] = 0.0;
    }
    const double dq = d_[q];
    if (dq != 0.0) {
      for (int j = 0; j < total_; ++j) {
        if (prow[j] != 0.0) d_[j] -= dq * prow[j];
      }
    }
    d_[q] = 0.0;
    row_of_[basis_[r]] = -1;
    basis_[r] = q;
    row_of_[q] = r;
  }

  // Fixes artificials at zero and pivots basic ones out where possible. A
  // basic artificial that cannot leave marks a redundant row and stays at 0.
  void retire_artificials() {
    for (int k = n_ + m_; k < total_; ++k) {
      up_[k] = 0.0;
      if (row_of_[k] < 0) x_[k] = 0.0;
    }
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < n_ + m_) continue;
      x_[basis_[r]] = 0.0;
      int best = -1;
      double best_abs = 1e-7;
      for (int j = 0; j < n_ + m_; ++j) {
        if (row_of_[j] >= 0) continue;
        if (std::fabs(at(r, j)) > best_abs) {
          best_abs = std::fabs(at(r, j));
          best = j;
        }
      }
      if (best >= 0) pivot(r, best);
    }
  }

  const ConstraintSystem& sys_;
  SimplexOptions opt_;
  int m_;
  int n_;
  int num_artificial_ = 0;
  int total_ = 0;
  long iterations_ = 0;

  std::vector<double> tab_;
  std::vector<double> x_;
  std::vector<double> lo_;
  std::vector<double> up_;
  std::vector<double> d_;
  std::vector<double> sigma_;
  std::vector<double> tau_;
  std::vector<int> artificial_row_;
  std::vector<int> basis_;
  std::vector<int> row_of_;
};

}  // namespace

LpSolution solve_lp(const ConstraintSystem& sys, const SimplexOptions& options) {
  return DenseSimplex(sys, options).solve();
}

IntegralityReport is_integral(const LpSolution& sol, double tol) {
  IntegralityReport report;
  for (std::size_t j = 0; j < sol.values.size(); ++j) {
    const double v = sol.values[j];
    const double dist = std::min(std::fabs(v), std::fabs(v - 1.0));
    if (dist > report.worst_distance) {
      report.worst_distance = dist;
      report.worst_column = static_cast<int>(j);
    }
  }
  report.integral = report.worst_distance <= tol;
  if (report.integral) report.worst_column = -1;
  return report;
}

}  // namespace tfmp
