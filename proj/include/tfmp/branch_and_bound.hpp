// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "tfmp/constraint_system.hpp"
#include "tfmp/exact.hpp"
#include "tfmp/simplex.hpp"

namespace tfmp {

enum class IpStatus { kOptimal, kInfeasible };

const char* to_string(IpStatus status);

struct IpSolution {
  IpStatus status = IpStatus::kInfeasible;
  std::vector<int> values;  // 0/1 per column
  double objective = 0.0;
  Rational exact_objective;  // objective re-evaluated in exact arithmetic
  long nodes_explored = 0;
  bool lp_was_integral = false;
  double root_bound = 0.0;  // root LP objective (valid when the root is feasible)
  // Smallest LP objective over all explored nodes; never below root_bound.
  double lowest_node_bound = 0.0;
};

struct BranchAndBoundOptions {
  long node_limit = 1'000'000;
  // When false, nodes are never discarded by bound; only infeasible and
  // integral nodes end a branch.
  bool prune = true;
  double integrality_tol = kIntegralityTolerance;
  SimplexOptions lp;
};

// Best-first branch and bound over 0/1 columns. Branching variable is the
// most fractional one (lowest index on ties); branches fix column bounds.
// Throws NodeLimit when node_limit LP solves are exceeded.
IpSolution solve_ip(const ConstraintSystem& sys, const BranchAndBoundOptions& options = {});

}  // namespace tfmp
