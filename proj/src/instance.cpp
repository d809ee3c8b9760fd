// SPDX-License-Identifier: Apache-2.0

#include "tfmp/instance.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tfmp/errors.hpp"

namespace tfmp {

const char* to_string(ResourceKind kind) {
  switch (kind) {
    case ResourceKind::kDeparture:
      return "Departure";
    case ResourceKind::kArrival:
      return "Arrival";
    case ResourceKind::kSector:
      return "Sector";
  }
  return "?";
}

void CapacityProfile::set_horizon(int horizon) {
  horizon_ = horizon;
  for (auto& [name, s] : table_) {
    s.departure.resize(horizon, kUnbounded);
    s.arrival.resize(horizon, kUnbounded);
    s.sector.resize(horizon, kUnbounded);
  }
}

std::vector<int>& CapacityProfile::series(const std::string& sector, ResourceKind kind) {
  auto [it, inserted] = table_.try_emplace(sector);
  Series& s = it->second;
  if (inserted) {
    s.departure.assign(horizon_, kUnbounded);
    s.arrival.assign(horizon_, kUnbounded);
    s.sector.assign(horizon_, kUnbounded);
  }
  switch (kind) {
    case ResourceKind::kDeparture:
      return s.departure;
    case ResourceKind::kArrival:
      return s.arrival;
    case ResourceKind::kSector:
      break;
  }
  return s.sector;
}

void CapacityProfile::set(const std::string& sector, ResourceKind kind, int t_from, int t_to,
                          int value) {
  if (t_from < 1 || t_to > horizon_ || t_from > t_to) {
    throw std::out_of_range("capacity range " + std::to_string(t_from) + ".." +
                            std::to_string(t_to) + " outside horizon 1.." +
                            std::to_string(horizon_));
  }
  auto& values = series(sector, kind);
  std::fill(values.begin() + (t_from - 1), values.begin() + t_to, value);
}

int CapacityProfile::get(const std::string& sector, ResourceKind kind, int t) const {
  auto it = table_.find(sector);
  if (it == table_.end() || t < 1 || t > horizon_) return kUnbounded;
  const Series& s = it->second;
  switch (kind) {
    case ResourceKind::kDeparture:
      return s.departure[t - 1];
    case ResourceKind::kArrival:
      return s.arrival[t - 1];
    case ResourceKind::kSector:
      break;
  }
  return s.sector[t - 1];
}

std::vector<std::string> CapacityProfile::sectors() const {
  std::vector<std::string> out;
  for (const auto& [name, s] : table_) out.push_back(name);
  return out;
}

// Profiles compare by effective values, so an all-unbounded entry equals a
// missing one.
bool operator==(const CapacityProfile& a, const CapacityProfile& b) {
  if (a.horizon_ != b.horizon_) return false;
  std::set<std::string> names;
  for (const auto& [n, s] : a.table_) names.insert(n);
  for (const auto& [n, s] : b.table_) names.insert(n);
  for (const auto& n : names) {
    for (auto kind : {ResourceKind::kDeparture, ResourceKind::kArrival, ResourceKind::kSector}) {
      for (int t = 1; t <= a.horizon_; ++t) {
        if (a.get(n, kind, t) != b.get(n, kind, t)) return false;
      }
    }
  }
  return true;
}

std::optional<std::size_t> Instance::flight_index(const std::string& id) const {
  for (std::size_t i = 0; i < flights.size(); ++i) {
    if (flights[i].id == id) return i;
  }
  return std::nullopt;
}

ValidatedInstance::ValidatedInstance(Instance instance)
    : instance_(std::move(instance)), incoming_(instance_.flights.size()) {
  for (std::size_t c = 0; c < instance_.continuations.size(); ++c) {
    auto f = instance_.flight_index(instance_.continuations[c].outgoing);
    incoming_[*f] = c;
  }
}

std::optional<std::size_t> ValidatedInstance::incoming_of(std::size_t flight) const {
  return incoming_.at(flight);
}

namespace {

std::string window_text(const TimeWindow& w) {
  return std::to_string(w.first) + ".." + std::to_string(w.last);
}

}  // namespace

ValidatedInstance validate_instance(Instance raw) {
  std::vector<ValidationIssue> issues;
  auto report = [&](std::string location, std::string message) {
    issues.push_back({std::move(location), std::move(message)});
  };

  const int horizon = raw.horizon;
  if (horizon < 1) report("horizon", "horizon must be at least 1, got " + std::to_string(horizon));

  std::set<std::string> sectors;
  for (const auto& s : raw.sectors) {
    if (s.empty()) {
      report("sectors", "empty sector id");
    } else if (!sectors.insert(s).second) {
      report("sectors", "duplicate sector id '" + s + "'");
    }
  }

  std::set<std::string> flight_ids;
  for (const auto& f : raw.flights) {
    const std::string loc = "flight '" + f.id + "'";
    if (f.id.empty()) {
      report("flights", "empty flight id");
    } else if (!flight_ids.insert(f.id).second) {
      report(loc, "duplicate flight id '" + f.id + "'");
    }
    if (f.path.size() < 2) {
      report(loc, "path needs a departure and an arrival airport, got " +
                      std::to_string(f.path.size()) + " sector(s)");
    }
    std::set<std::string> seen;
    for (const auto& s : f.path) {
      if (!sectors.contains(s)) report(loc, "unknown sector '" + s + "' in path");
      if (!seen.insert(s).second) report(loc, "sector '" + s + "' appears twice in path");
    }
    if (f.path.size() >= 1 && f.transit_times.size() + 1 != f.path.size()) {
      report(loc, "expected " + std::to_string(f.path.size() - 1) + " transit time(s), got " +
                      std::to_string(f.transit_times.size()));
    }
    for (int l : f.transit_times) {
      if (l < 1) report(loc, "transit times must be positive, got " + std::to_string(l));
    }
    if (f.turnaround < 0) report(loc, "turnaround must be non-negative");
    if (f.ground_cost < 0 || f.air_cost < 0) report(loc, "delay costs must be non-negative");
    if (f.scheduled_departure < 1 || f.scheduled_departure > horizon) {
      report(loc, "scheduled departure " + std::to_string(f.scheduled_departure) +
                      " outside horizon 1.." + std::to_string(horizon));
    }
    if (f.scheduled_arrival < 1 || f.scheduled_arrival > horizon) {
      report(loc, "scheduled arrival " + std::to_string(f.scheduled_arrival) +
                      " outside horizon 1.." + std::to_string(horizon));
    }
    if (f.windows.size() != f.path.size()) {
      report(loc, "expected " + std::to_string(f.path.size()) + " window(s), got " +
                      std::to_string(f.windows.size()));
    }
    for (std::size_t i = 0; i < f.windows.size(); ++i) {
      const std::string wloc =
          loc + " sector " + (i < f.path.size() ? "'" + f.path[i] + "'" : std::to_string(i));
      const auto& w = f.windows[i];
      if (!w) {
        report(wloc, "missing time window (derive windows first)");
      } else if (w->empty()) {
        report(wloc, "empty time window " + window_text(*w));
      } else if (w->first < 1 || w->last > horizon) {
        report(wloc, "time window " + window_text(*w) + " outside horizon 1.." +
                         std::to_string(horizon));
      }
    }
  }

  if (!raw.capacities.sectors().empty() && raw.capacities.horizon() != horizon) {
    report("capacities", "capacity profile horizon " + std::to_string(raw.capacities.horizon()) +
                             " differs from instance horizon " + std::to_string(horizon));
  }
  for (const auto& s : raw.capacities.sectors()) {
    if (!sectors.contains(s)) report("capacities", "unknown sector '" + s + "'");
    for (auto kind : {ResourceKind::kDeparture, ResourceKind::kArrival, ResourceKind::kSector}) {
      for (int t = 1; t <= raw.capacities.horizon(); ++t) {
        int v = raw.capacities.get(s, kind, t);
        if (v < 0 && v != kUnbounded) {
          report("capacities", std::string(to_string(kind)) + " capacity of '" + s + "' at t=" +
                                   std::to_string(t) + " is negative");
        }
      }
    }
  }

  std::set<std::string> continued;
  for (const auto& c : raw.continuations) {
    const std::string loc = "continuation " + c.incoming + " > " + c.outgoing;
    auto in = raw.flight_index(c.incoming);
    auto out = raw.flight_index(c.outgoing);
    if (!in) report(loc, "unknown flight '" + c.incoming + "'");
    if (!out) report(loc, "unknown flight '" + c.outgoing + "'");
    if (c.incoming == c.outgoing) report(loc, "a flight cannot continue itself");
    if (!continued.insert(c.outgoing).second) {
      report(loc, "flight '" + c.outgoing + "' continues more than one flight");
    }
    if (in && out) {
      const Flight& fin = raw.flights[*in];
      const Flight& fout = raw.flights[*out];
      if (!fin.path.empty() && !fout.path.empty() &&
          fin.arrival_airport() != fout.departure_airport()) {
        report(loc, "airport mismatch: '" + c.incoming + "' arrives at " + fin.arrival_airport() +
                        " but '" + c.outgoing + "' departs from " + fout.departure_airport());
      }
    }
  }

  if (!issues.empty()) throw ValidationError(std::move(issues));
  return ValidatedInstance(std::move(raw));
}

Instance derive_time_windows(Instance inst, int max_ground_hold, int max_air_hold,
                             int allow_early) {
  if (max_ground_hold < 0 || max_air_hold < 0 || allow_early < 0) {
    throw std::invalid_argument("hold allowances must be non-negative");
  }
  for (auto& f : inst.flights) {
    f.windows.resize(f.path.size());
    int earliest = f.scheduled_departure - allow_early;
    for (std::size_t i = 0; i < f.path.size(); ++i) {
      if (i > 0 && i - 1 < f.transit_times.size()) earliest += f.transit_times[i - 1];
      if (f.windows[i]) continue;
      TimeWindow w{earliest, earliest + allow_early + max_ground_hold + max_air_hold};
      w.first = std::max(w.first, 1);
      w.last = std::min(w.last, inst.horizon);
      if (w.empty()) {
        throw WindowError("flight '" + f.id + "': derived window for sector '" + f.path[i] +
                          "' is empty (earliest " + std::to_string(earliest) +
                          ", horizon " + std::to_string(inst.horizon) + ")");
      }
      f.windows[i] = w;
    }
  }
  return inst;
}

Instance derive_time_windows(Instance inst) {
  const WindowPolicy p = inst.window_policy;
  return derive_time_windows(std::move(inst), p.max_ground_hold, p.max_air_hold, p.allow_early);
}

}  // namespace tfmp
