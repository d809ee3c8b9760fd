// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tfmp {

// Capacity value meaning "no limit". Missing capacity entries take this value.
inline constexpr int kUnbounded = -1;

// Inclusive interval [first, last] of feasible arrive-by times.
struct TimeWindow {
  int first = 1;
  int last = 0;

  bool empty() const { return last < first; }
  int size() const { return empty() ? 0 : last - first + 1; }
  bool contains(int t) const { return first <= t && t <= last; }

  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

struct Flight {
  std::string id;
  // Ordered sector list; the first entry is the departure airport and the last
  // one the arrival airport.
  std::vector<std::string> path;
  int scheduled_departure = 1;
  int scheduled_arrival = 1;
  int turnaround = 0;
  double ground_cost = 0.0;
  double air_cost = 0.0;
  // Periods spent in path[i] before entering path[i + 1]; one entry per
  // sector except the last.
  std::vector<int> transit_times;
  // One entry per path sector. Absent windows are filled by
  // derive_time_windows().
  std::vector<std::optional<TimeWindow>> windows;

  std::size_t num_sectors() const { return path.size(); }
  const std::string& departure_airport() const { return path.front(); }
  const std::string& arrival_airport() const { return path.back(); }

  friend bool operator==(const Flight&, const Flight&) = default;
};

enum class ResourceKind { kDeparture, kArrival, kSector };

const char* to_string(ResourceKind kind);

// Departure, arrival and occupancy capacities per (sector, time). Entries that
// were never set read as kUnbounded.
class CapacityProfile {
 public:
  CapacityProfile() = default;
  explicit CapacityProfile(int horizon) : horizon_(horizon) {}

  int horizon() const { return horizon_; }
  void set_horizon(int horizon);

  // Sets `kind` capacity of `sector` for every t in [t_from, t_to].
  void set(const std::string& sector, ResourceKind kind, int t_from, int t_to, int value);
  int get(const std::string& sector, ResourceKind kind, int t) const;

  bool has_sector(const std::string& sector) const { return table_.contains(sector); }
  std::vector<std::string> sectors() const;

  friend bool operator==(const CapacityProfile& a, const CapacityProfile& b);

 private:
  struct Series {
    std::vector<int> departure;
    std::vector<int> arrival;
    std::vector<int> sector;
  };
  std::vector<int>& series(const std::string& sector, ResourceKind kind);

  int horizon_ = 0;
  std::map<std::string, Series> table_;
};

struct Continuation {
  std::string incoming;  // f', whose aircraft performs `outgoing` next
  std::string outgoing;  // f

  friend bool operator==(const Continuation&, const Continuation&) = default;
};

// Hold allowances used to derive windows that a data file leaves implicit.
struct WindowPolicy {
  int max_ground_hold = 0;
  int max_air_hold = 0;
  int allow_early = 0;

  friend bool operator==(const WindowPolicy&, const WindowPolicy&) = default;
};

struct Instance {
  std::vector<std::string> sectors;
  std::vector<Flight> flights;
  int horizon = 0;
  CapacityProfile capacities;
  std::vector<Continuation> continuations;
  WindowPolicy window_policy;
  // Metadata only; never enters the model.
  int period_minutes = 15;

  std::optional<std::size_t> flight_index(const std::string& id) const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

// An instance whose invariants have been checked. Only validate_instance()
// creates one, so holders can rely on consistent data.
class ValidatedInstance {
 public:
  const Instance& get() const { return instance_; }
  const Instance* operator->() const { return &instance_; }
  const Instance& operator*() const { return instance_; }

  // Index of the continuation pair whose outgoing flight is `flight`, if any.
  std::optional<std::size_t> incoming_of(std::size_t flight) const;

 private:
  friend ValidatedInstance validate_instance(Instance raw);
  explicit ValidatedInstance(Instance instance);

  Instance instance_;
  std::vector<std::optional<std::size_t>> incoming_;
};

// Checks every invariant and reports all violations together.
// Throws ValidationError.
ValidatedInstance validate_instance(Instance raw);

// Fills absent windows from the schedule. For path position i the earliest
// arrive-by time is d_f + sum of the preceding transit times - allow_early
// and the latest is earliest + allow_early + max_ground_hold + max_air_hold,
// both clipped to [1, horizon]. Explicit windows are kept as they are.
// Throws WindowError when a derived window is empty after clipping.
Instance derive_time_windows(Instance inst, int max_ground_hold, int max_air_hold, int allow_early);

// Same, using the instance's own window policy.
Instance derive_time_windows(Instance inst);

}  // namespace tfmp
