// SPDX-License-Identifier: Apache-2.0

#include "tfmp/branch_and_bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "tfmp/errors.hpp"

namespace tfmp {

const char* to_string(IpStatus status) {
  return status == IpStatus::kOptimal ? "Optimal" : "Infeasible";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBoundEps = 1e-9;

struct Node {
  double bound = 0.0;  // parent LP objective
  int depth = 0;
  long sequence = 0;
  std::vector<double> lower;
  std::vector<double> upper;
};

// Best bound first; deeper first on ties; then creation order.
struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.sequence > b.sequence;
  }
};

std::vector<int> rounded(const std::vector<double>& values) {
  std::vector<int> out(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) out[j] = static_cast<int>(std::lround(values[j]));
  return out;
}

}  // namespace

IpSolution solve_ip(const ConstraintSystem& sys, const BranchAndBoundOptions& options) {
  const ExactSystem exact(sys);
  ConstraintSystem work = sys;

  IpSolution result;
  double incumbent = kInf;
  long sequence = 0;

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  open.push(Node{-kInf, 0, sequence++, sys.lower, sys.upper});

  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (options.prune && node.bound >= incumbent - kBoundEps) continue;

    if (result.nodes_explored >= options.node_limit) {
      throw NodeLimit("branch and bound exceeded " + std::to_string(options.node_limit) +
                      " nodes");
    }
    ++result.nodes_explored;
    work.lower = node.lower;
    work.upper = node.upper;
    const LpSolution lp = solve_lp(work, options.lp);
    const bool root = result.nodes_explored == 1;
    if (lp.status != LpStatus::kOptimal) {
      if (root) return result;
      continue;
    }
    if (root) {
      result.root_bound = lp.objective;
      result.lowest_node_bound = lp.objective;
    }
    result.lowest_node_bound = std::min(result.lowest_node_bound, lp.objective);
    if (options.prune && lp.objective >= incumbent - kBoundEps) continue;

    const IntegralityReport integrality = is_integral(lp, options.integrality_tol);
    if (integrality.integral) {
      std::vector<int> point = rounded(lp.values);
      if (exact.feasible(point)) {
        if (root) {
          result.lp_was_integral = true;
          result.status = IpStatus::kOptimal;
          result.values = std::move(point);
          result.objective = lp.objective;
          result.exact_objective = exact.objective(result.values);
          return result;
        }
        if (lp.objective < incumbent - kBoundEps || result.status != IpStatus::kOptimal) {
          incumbent = lp.objective;
          result.status = IpStatus::kOptimal;
          result.values = std::move(point);
        }
        continue;
      }
    }

    // Most fractional column, lowest index on ties. A rounded point that fails
    // the exact check branches on the lowest unfixed column instead.
    int branch = -1;
    double best = 0.0;
    for (int j = 0; j < sys.num_columns; ++j) {
      const double v = lp.values[j];
      const double dist = std::fabs(v - std::round(v));
      if (dist > options.integrality_tol && dist > best + 1e-12) {
        best = dist;
        branch = j;
      }
    }
    if (branch < 0) {
      for (int j = 0; j < sys.num_columns; ++j) {
        if (node.lower[j] < node.upper[j]) {
          branch = j;
          break;
        }
      }
      if (branch < 0) continue;
    }

    Node down{lp.objective, node.depth + 1, sequence++, node.lower, node.upper};
    down.upper[branch] = node.lower[branch];
    Node up{lp.objective, node.depth + 1, sequence++, node.lower, node.upper};
    up.lower[branch] = node.lower[branch] + 1.0;
    if (up.lower[branch] <= up.upper[branch]) open.push(std::move(up));
    open.push(std::move(down));
  }

  if (result.status == IpStatus::kOptimal) {
    result.exact_objective = exact.objective(result.values);
    result.objective = sys.objective_value(
        std::vector<double>(result.values.begin(), result.values.end()));
  }
  return result;
}

}  // namespace tfmp
