// SPDX-License-Identifier: Apache-2.0

#include "tfmp/decomposition.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "tfmp/exact.hpp"

namespace tfmp {

const char* to_string(ConflictKind kind) {
  switch (kind) {
    case ConflictKind::kDeparture:
      return "Departure";
    case ConflictKind::kArrival:
      return "Arrival";
    case ConflictKind::kSector:
      return "Sector";
    case ConflictKind::kTurnaround:
      break;
  }
  return "Turnaround";
}

NonConvergence::NonConvergence(DecompositionTrace trace)
    : Error("conflict decomposition did not converge within " +
            std::to_string(trace.iterations.size()) + " iteration(s)"),
      trace_(std::move(trace)) {}

namespace {

using UsageKey = std::tuple<std::string, ResourceKind, int>;

// Flights using each (sector, resource, time) at the given trajectories.
std::map<UsageKey, std::vector<std::size_t>> resource_usage(
    const Instance& inst, std::span<const FlightSchedule> schedule) {
  std::map<UsageKey, std::vector<std::size_t>> usage;
  for (std::size_t f = 0; f < inst.flights.size(); ++f) {
    const Flight& fl = inst.flights[f];
    const auto& times = schedule[f].sector_times;
    usage[{fl.departure_airport(), ResourceKind::kDeparture, times.front()}].push_back(f);
    usage[{fl.arrival_airport(), ResourceKind::kArrival, times.back()}].push_back(f);
    for (std::size_t i = 0; i + 1 < fl.path.size(); ++i) {
      for (int t = std::max(times[i], 1); t < times[i + 1] && t <= inst.horizon; ++t) {
        usage[{fl.path[i], ResourceKind::kSector, t}].push_back(f);
      }
    }
  }
  return usage;
}

ConflictKind conflict_kind(ResourceKind kind) {
  switch (kind) {
    case ResourceKind::kDeparture:
      return ConflictKind::kDeparture;
    case ResourceKind::kArrival:
      return ConflictKind::kArrival;
    case ResourceKind::kSector:
      break;
  }
  return ConflictKind::kSector;
}

struct SolvedSubset {
  std::vector<FlightSchedule> schedule;  // aligned with the subset's flights
  double objective = 0.0;
};

SolvedSubset solve_exact(const ValidatedInstance& inst, const BranchAndBoundOptions& options) {
  const VariableMap vars = build_variables(inst);
  ConstraintSystem sys;
  try {
    sys = build_system(inst, vars);
  } catch (const InfeasibleConstruction& e) {
    throw InfeasibleSubproblem(e.what());
  }
  const IpSolution ip = solve_ip(sys, options);
  if (ip.status != IpStatus::kOptimal) {
    throw InfeasibleSubproblem("restricted problem over " + std::to_string(inst->flights.size()) +
                               " flight(s) has no feasible schedule");
  }
  const std::vector<double> values(ip.values.begin(), ip.values.end());
  ExtractedSchedule ex = extract_schedule(inst, vars, sys, values);
  return SolvedSubset{std::move(ex.flights), ex.total_beta};
}

// Instance over the flights in `subset`; the remaining flights are frozen at
// `schedule` and their usage is removed from the capacities.
Instance restricted_instance(const Instance& full, const std::set<std::string>& subset,
                             std::span<const FlightSchedule> schedule) {
  Instance sub;
  sub.sectors = full.sectors;
  sub.horizon = full.horizon;
  sub.window_policy = full.window_policy;
  sub.period_minutes = full.period_minutes;
  sub.capacities = CapacityProfile(full.horizon);

  std::vector<FlightSchedule> frozen_schedule;
  Instance frozen;
  frozen.horizon = full.horizon;
  for (std::size_t f = 0; f < full.flights.size(); ++f) {
    if (subset.contains(full.flights[f].id)) {
      sub.flights.push_back(full.flights[f]);
    } else {
      frozen.flights.push_back(full.flights[f]);
      frozen_schedule.push_back(schedule[f]);
    }
  }
  for (const auto& c : full.continuations) {
    if (subset.contains(c.incoming) && subset.contains(c.outgoing)) sub.continuations.push_back(c);
  }

  const auto usage = resource_usage(frozen, frozen_schedule);
  for (const auto& sector : full.sectors) {
    for (auto kind : {ResourceKind::kDeparture, ResourceKind::kArrival, ResourceKind::kSector}) {
      for (int t = 1; t <= full.horizon; ++t) {
        const int cap = full.capacities.get(sector, kind, t);
        if (cap == kUnbounded) continue;
        auto it = usage.find({sector, kind, t});
        const int used = it == usage.end() ? 0 : static_cast<int>(it->second.size());
        sub.capacities.set(sector, kind, t, t, std::max(0, cap - used));
      }
    }
  }
  return sub;
}

}  // namespace

ConflictSet detect_conflicts(const Instance& inst, std::span<const FlightSchedule> schedule) {
  ConflictSet out;
  const auto usage = resource_usage(inst, schedule);

  // Report in sector order, then resource kind, then time.
  for (const auto& sector : inst.sectors) {
    for (auto kind : {ResourceKind::kDeparture, ResourceKind::kArrival, ResourceKind::kSector}) {
      for (int t = 1; t <= inst.horizon; ++t) {
        auto it = usage.find({sector, kind, t});
        if (it == usage.end()) continue;
        const int cap = inst.capacities.get(sector, kind, t);
        const int demand = static_cast<int>(it->second.size());
        if (cap == kUnbounded || demand <= cap) continue;
        ConflictEvidence ev{conflict_kind(kind), sector, t, {}, cap, demand};
        for (std::size_t f : it->second) ev.flights.push_back(inst.flights[f].id);
        out.evidence.push_back(std::move(ev));
      }
    }
  }
  for (const auto& c : inst.continuations) {
    const std::size_t fin = *inst.flight_index(c.incoming);
    const std::size_t fout = *inst.flight_index(c.outgoing);
    const int arrival = schedule[fin].sector_times.back();
    const int departure = schedule[fout].sector_times.front();
    const int required = inst.flights[fin].turnaround;
    if (departure - arrival >= required) continue;
    out.evidence.push_back(ConflictEvidence{ConflictKind::kTurnaround,
                                            inst.flights[fout].departure_airport(), departure,
                                            {c.incoming, c.outgoing}, required,
                                            departure - arrival});
  }

  for (const auto& ev : out.evidence) out.conflicting.insert(ev.flights.begin(), ev.flights.end());
  for (const auto& f : inst.flights) {
    if (!out.conflicting.contains(f.id)) out.others.insert(f.id);
  }
  return out;
}

DecompositionTrace iterative_solve(const ValidatedInstance& inst,
                                   const DecompositionOptions& options) {
  const Instance& full = inst.get();
  const int max_iters =
      options.max_iters > 0 ? options.max_iters : static_cast<int>(full.flights.size()) + 1;

  DecompositionTrace trace;
  std::vector<FlightSchedule> current = scheduled_trajectories(full);
  std::set<std::string> x;

  for (int iter = 0; iter < max_iters; ++iter) {
    const ConflictSet conflicts = detect_conflicts(full, current);
    if (conflicts.evidence.empty()) {
      trace.iterations.push_back({static_cast<int>(x.size()), total_cost(current), {}});
      trace.converged = true;
      break;
    }
    DecompositionIteration record;
    for (const auto& f : conflicts.conflicting) {
      if (x.insert(f).second) record.transfers.push_back(f);
    }
    record.x_size = static_cast<int>(x.size());

    if (x.size() == full.flights.size()) {
      SolvedSubset solved = solve_exact(inst, options.solver);
      current = std::move(solved.schedule);
      record.objective = total_cost(current);
      trace.iterations.push_back(std::move(record));
      trace.collapsed_to_full = true;
      trace.converged = true;
      break;
    }

    const ValidatedInstance sub = validate_instance(restricted_instance(full, x, current));
    SolvedSubset solved = solve_exact(sub, options.solver);
    std::size_t k = 0;
    for (std::size_t f = 0; f < full.flights.size(); ++f) {
      if (x.contains(full.flights[f].id)) current[f] = std::move(solved.schedule[k++]);
    }
    record.objective = total_cost(current);
    trace.iterations.push_back(std::move(record));
  }

  trace.final_schedule = current;
  trace.final_conflict_set = x;
  trace.decomposed_objective = total_cost(current);
  if (options.compute_full_objective) {
    trace.full_objective = solve_exact(inst, options.solver).objective;
  }
  if (!trace.converged) throw NonConvergence(std::move(trace));
  return trace;
}

bool schedule_is_feasible(const ValidatedInstance& inst, std::span<const FlightSchedule> schedule) {
  if (schedule.size() != inst->flights.size()) return false;
  for (std::size_t f = 0; f < schedule.size(); ++f) {
    const Flight& fl = inst->flights[f];
    if (schedule[f].sector_times.size() != fl.path.size()) return false;
  }
  const VariableMap vars = build_variables(inst);
  ConstraintSystem sys;
  try {
    sys = build_system(inst, vars);
  } catch (const InfeasibleConstruction&) {
    return false;
  }
  const auto values = schedule_columns(vars, schedule);
  if (!values) return false;
  std::vector<int> point(values->size());
  for (std::size_t c = 0; c < point.size(); ++c) point[c] = static_cast<int>((*values)[c]);
  return ExactSystem(sys).feasible(point);
}

}  // namespace tfmp
