// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tfmp/branch_and_bound.hpp"
#include "tfmp/errors.hpp"
#include "tfmp/formulation.hpp"
#include "tfmp/instance.hpp"

namespace tfmp {

enum class ConflictKind { kDeparture, kArrival, kSector, kTurnaround };

const char* to_string(ConflictKind kind);

struct ConflictEvidence {
  ConflictKind kind = ConflictKind::kArrival;
  std::string resource;  // sector, or the connecting airport for turnarounds
  int time = 0;
  std::vector<std::string> flights;
  int capacity = 0;  // turnarounds: the required turnaround periods
  int demand = 0;    // turnarounds: the periods actually available
};

struct ConflictSet {
  std::set<std::string> conflicting;  // X
  std::set<std::string> others;       // Y
  std::vector<ConflictEvidence> evidence;
};

// Checks capacity rows (departure, arrival, sector occupancy) and turnaround
// pairs against fixed trajectories. `schedule` is aligned with inst.flights.
ConflictSet detect_conflicts(const Instance& inst, std::span<const FlightSchedule> schedule);

struct DecompositionIteration {
  int x_size = 0;
  double objective = 0.0;  // total cost of the trajectories after this iteration
  std::vector<std::string> transfers;  // flights moved from Y into X
};

struct DecompositionTrace {
  std::vector<DecompositionIteration> iterations;
  std::vector<FlightSchedule> final_schedule;
  std::set<std::string> final_conflict_set;
  bool converged = false;
  bool collapsed_to_full = false;
  double decomposed_objective = 0.0;
  // Optimum of the full instance, filled only when requested.
  std::optional<double> full_objective;
};

struct DecompositionOptions {
  // 0 means number of flights + 1.
  int max_iters = 0;
  bool compute_full_objective = false;
  BranchAndBoundOptions solver;
};

class NonConvergence : public Error {
 public:
  explicit NonConvergence(DecompositionTrace trace);
  const DecompositionTrace& trace() const { return trace_; }

 private:
  DecompositionTrace trace_;
};

// Repeatedly solves the problem restricted to the conflicting flights X, with
// every other flight frozen at its trajectory and its capacity usage
// subtracted, until no constraint of the full instance is violated. Flights
// never leave X. Continuation pairs that cross X and Y are not modelled in
// the subproblem; a violation there pulls the Y flight into X.
// Throws NonConvergence or InfeasibleSubproblem.
DecompositionTrace iterative_solve(const ValidatedInstance& inst,
                                   const DecompositionOptions& options = {});

// Re-verifies `schedule` against every row of the full formulation of `inst`
// in exact arithmetic. Trajectories outside their windows are infeasible.
bool schedule_is_feasible(const ValidatedInstance& inst, std::span<const FlightSchedule> schedule);

}  // namespace tfmp
