// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "tfmp/constraint_system.hpp"
#include "tfmp/formulation.hpp"

namespace tfmp {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> values;  // one per structural column
  double objective = 0.0;      // includes the system offset
  long iterations = 0;
  // Basic variable per row. Indices below num_columns are structural; the
  // next block are row slacks, then phase-one artificials.
  std::vector<int> basis;
};

struct SimplexOptions {
  long max_iterations = 100000;
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-9;
  // Consecutive degenerate pivots after which Bland's rule takes over from
  // Dantzig pricing.
  int degeneracy_streak = 50;
};

// Two-phase bounded-variable primal simplex on a dense tableau. All column
// bounds must be finite. Throws CycleLimit when max_iterations is exceeded.
LpSolution solve_lp(const ConstraintSystem& sys, const SimplexOptions& options = {});

struct IntegralityReport {
  bool integral = true;
  int worst_column = -1;       // most fractional column, -1 when integral
  double worst_distance = 0.0;  // its distance to {0, 1}
};

IntegralityReport is_integral(const LpSolution& sol, double tol = kIntegralityTolerance);

}  // namespace tfmp
