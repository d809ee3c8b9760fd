// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tfmp/constraint_system.hpp"
#include "tfmp/instance.hpp"

namespace tfmp {

// Absolute distance to the nearest integer below which a value counts as
// integral.
inline constexpr double kIntegralityTolerance = 1e-6;

// (flight, path position, time): one arrive-by variable.
struct VarKey {
  int flight = 0;
  int position = 0;
  int time = 0;

  friend auto operator<=>(const VarKey&, const VarKey&) = default;
};

// Value of an arrive-by variable: either a column or a constant 0/1.
struct VarRef {
  int column = -1;
  int constant = 0;

  bool is_column() const { return column >= 0; }
};

// Bijection between free arrive-by triples and LP columns. For every
// (flight, sector) pair the last window time is eliminated (fixed to 1);
// times before the window read as 0 and times after it as 1.
class VariableMap {
 public:
  int num_columns() const { return static_cast<int>(keys_.size()); }
  const VarKey& key(int column) const { return keys_.at(column); }
  const std::vector<VarKey>& keys() const { return keys_; }

  // Eliminated triples, one per (flight, sector) pair, all with value 1.
  std::vector<std::pair<VarKey, int>> fixed() const;

  VarRef ref(int flight, int position, int time) const;
  const TimeWindow& window(int flight, int position) const;
  // Columns of one (flight, sector) pair ordered by time.
  std::vector<int> chain(int flight, int position) const;

  std::string column_name(const Instance& inst, int column) const;

 private:
  friend VariableMap build_variables(const ValidatedInstance& inst);

  struct Block {
    TimeWindow window;
    int first_column = 0;
  };
  std::vector<std::vector<Block>> blocks_;
  std::vector<VarKey> keys_;
};

VariableMap build_variables(const ValidatedInstance& inst);

// Emits capacity, transit, turnaround and monotonicity rows plus the delay-cost
// objective. Fixed variables are substituted into right-hand sides; rows
// that become constant are dropped when they hold and raise
// InfeasibleConstruction when they do not.
ConstraintSystem build_system(const ValidatedInstance& inst, const VariableMap& vars);

struct FlightSchedule {
  std::string flight;
  int dep_sched = 0;
  int dep_actual = 0;
  int arr_sched = 0;
  int arr_actual = 0;
  int ground_delay = 0;
  int air_delay = 0;
  // Computed cost c_g * g + c_a * a; may be negative with early departures.
  double cost_beta = 0.0;
  // Real cost: each delay component clamped at zero before weighting.
  double cost_alpha = 0.0;
  // Arrive-by time at every path sector; front() is the actual departure and
  // back() the actual arrival.
  std::vector<int> sector_times;

  bool has_negative_component() const { return ground_delay < 0 || air_delay < 0; }
};

// Builds a schedule entry for `flight` flying through its path at
// `sector_times`.
FlightSchedule make_flight_schedule(const Flight& flight, std::vector<int> sector_times);

// Zero-delay trajectories: departure at d_f, then the minimum transit times.
std::vector<FlightSchedule> scheduled_trajectories(const Instance& inst);

double total_cost(std::span<const FlightSchedule> schedule);

// Column values encoding `schedule` (w = 1 from each sector time onwards), or
// nullopt when a sector time falls outside its window.
std::optional<std::vector<double>> schedule_columns(const VariableMap& vars,
                                                    std::span<const FlightSchedule> schedule);

struct ExtractedSchedule {
  std::vector<FlightSchedule> flights;
  double total_beta = 0.0;
  double total_alpha = 0.0;
};

// Reads per-flight departure/arrival times out of a 0/1 column assignment and
// checks that the summed per-flight costs equal the system objective.
// Throws FractionalSolution when a value is farther than `tol` from {0, 1}.
ExtractedSchedule extract_schedule(const ValidatedInstance& inst, const VariableMap& vars,
                                   const ConstraintSystem& sys, std::span<const double> values,
                                   double tol = kIntegralityTolerance);

}  // namespace tfmp
