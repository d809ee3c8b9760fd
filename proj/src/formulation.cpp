// SPDX-License-Identifier: Apache-2.0

#include "tfmp/formulation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "tfmp/errors.hpp"

namespace tfmp {

std::vector<std::pair<VarKey, int>> VariableMap::fixed() const {
  std::vector<std::pair<VarKey, int>> out;
  for (std::size_t f = 0; f < blocks_.size(); ++f) {
    for (std::size_t i = 0; i < blocks_[f].size(); ++i) {
      out.push_back({VarKey{static_cast<int>(f), static_cast<int>(i), blocks_[f][i].window.last}, 1});
    }
  }
  return out;
}

VarRef VariableMap::ref(int flight, int position, int time) const {
  const Block& b = blocks_.at(flight).at(position);
  if (time < b.window.first) return VarRef{-1, 0};
  if (time >= b.window.last) return VarRef{-1, 1};
  return VarRef{b.first_column + (time - b.window.first), 0};
}

const TimeWindow& VariableMap::window(int flight, int position) const {
  return blocks_.at(flight).at(position).window;
}

std::vector<int> VariableMap::chain(int flight, int position) const {
  const Block& b = blocks_.at(flight).at(position);
  std::vector<int> cols;
  for (int k = 0; k + 1 < b.window.size(); ++k) cols.push_back(b.first_column + k);
  return cols;
}

std::string VariableMap::column_name(const Instance& inst, int column) const {
  const VarKey& k = key(column);
  const Flight& f = inst.flights[k.flight];
  return "w[" + f.id + "," + f.path[k.position] + "," + std::to_string(k.time) + "]";
}

VariableMap build_variables(const ValidatedInstance& inst) {
  VariableMap vars;
  const auto& flights = inst->flights;
  vars.blocks_.resize(flights.size());
  int next = 0;
  for (std::size_t f = 0; f < flights.size(); ++f) {
    for (std::size_t i = 0; i < flights[f].path.size(); ++i) {
      const TimeWindow& w = *flights[f].windows[i];
      vars.blocks_[f].push_back({w, next});
      for (int t = w.first; t < w.last; ++t) {
        vars.keys_.push_back(VarKey{static_cast<int>(f), static_cast<int>(i), t});
        ++next;
      }
    }
  }
  return vars;
}

namespace {

// Linear expression over columns plus a constant.
class Expr {
 public:
  void add(const VarRef& v, double coef) {
    if (v.is_column()) {
      terms_[v.column] += coef;
    } else {
      constant_ += coef * v.constant;
    }
  }

  // Appends `expr sense rhs` to `sys` after moving the constant to the
  // right-hand side. Constant rows are checked and dropped.
  void emit(ConstraintSystem& sys, Sense sense, double rhs, RowTag tag) const {
    std::vector<RowEntry> entries;
    for (const auto& [col, coef] : terms_) {
      if (coef != 0.0) entries.push_back({col, coef});
    }
    const double adjusted = rhs - constant_;
    if (entries.empty()) {
      bool holds = sense == Sense::kLessEqual    ? 0.0 <= adjusted
                   : sense == Sense::kGreaterEqual ? 0.0 >= adjusted
                                                   : adjusted == 0.0;
      if (!holds) {
        throw InfeasibleConstruction("constraint " + tag.label() +
                                     " is violated for every schedule within the time windows");
      }
      return;
    }
    sys.add_row(std::move(entries), sense, adjusted, std::move(tag));
  }

 private:
  std::map<int, double> terms_;
  double constant_ = 0.0;
};

}  // namespace

ConstraintSystem build_system(const ValidatedInstance& inst, const VariableMap& vars) {
  const Instance& in = inst.get();
  const int horizon = in.horizon;
  const int nflights = static_cast<int>(in.flights.size());

  ConstraintSystem sys = ConstraintSystem::binary(vars.num_columns());
  for (int c = 0; c < vars.num_columns(); ++c) sys.column_names[c] = vars.column_name(in, c);

  // Departure (1) and arrival (2) capacities: w_t - w_{t-1} is 1 exactly when
  // the flight uses the airport at t.
  auto airport_rows = [&](RowFamily family, ResourceKind kind, bool departure) {
    for (const auto& sector : in.sectors) {
      std::vector<int> users;
      for (int f = 0; f < nflights; ++f) {
        const Flight& fl = in.flights[f];
        if ((departure ? fl.departure_airport() : fl.arrival_airport()) == sector) users.push_back(f);
      }
      if (users.empty()) continue;
      for (int t = 1; t <= horizon; ++t) {
        const int cap = in.capacities.get(sector, kind, t);
        if (cap == kUnbounded) continue;
        Expr e;
        for (int f : users) {
          const int pos = departure ? 0 : static_cast<int>(in.flights[f].path.size()) - 1;
          e.add(vars.ref(f, pos, t), 1.0);
          e.add(vars.ref(f, pos, t - 1), -1.0);
        }
        e.emit(sys, Sense::kLessEqual, cap, RowTag{family, sector, "", t});
      }
    }
  };
  airport_rows(RowFamily::kDepCap, ResourceKind::kDeparture, true);
  airport_rows(RowFamily::kArrCap, ResourceKind::kArrival, false);

  // Sector occupancy (3): arrived at P(f,i) but not yet at P(f,i+1).
  for (const auto& sector : in.sectors) {
    std::vector<std::pair<int, int>> users;
    for (int f = 0; f < nflights; ++f) {
      const auto& path = in.flights[f].path;
      for (int i = 0; i + 1 < static_cast<int>(path.size()); ++i) {
        if (path[i] == sector) users.push_back({f, i});
      }
    }
    if (users.empty()) continue;
    for (int t = 1; t <= horizon; ++t) {
      const int cap = in.capacities.get(sector, ResourceKind::kSector, t);
      if (cap == kUnbounded) continue;
      Expr e;
      for (auto [f, i] : users) {
        e.add(vars.ref(f, i, t), 1.0);
        e.add(vars.ref(f, i + 1, t), -1.0);
      }
      e.emit(sys, Sense::kLessEqual, cap, RowTag{RowFamily::kSectorCap, sector, "", t});
    }
  }

  // Transit (4). Rows for t inside the window of P(f,i), plus the row just
  // before it, which keeps the next sector empty until the earliest exit;
  // monotonicity covers every earlier t.
  for (int f = 0; f < nflights; ++f) {
    const Flight& fl = in.flights[f];
    for (int i = 0; i + 1 < static_cast<int>(fl.path.size()); ++i) {
      const int l = fl.transit_times[i];
      const TimeWindow& w = vars.window(f, i);
      for (int t = w.first - 1; t <= w.last; ++t) {
        Expr e;
        e.add(vars.ref(f, i + 1, t + l), 1.0);
        e.add(vars.ref(f, i, t), -1.0);
        e.emit(sys, Sense::kLessEqual, 0.0, RowTag{RowFamily::kTransit, fl.id, fl.path[i], t});
      }
    }
  }

  // Turnaround (5): f departs by t only if f' arrived by t - s_f'.
  for (const auto& c : in.continuations) {
    const int fin = static_cast<int>(*in.flight_index(c.incoming));
    const int fout = static_cast<int>(*in.flight_index(c.outgoing));
    const Flight& incoming = in.flights[fin];
    const int last = static_cast<int>(incoming.path.size()) - 1;
    const TimeWindow& w = vars.window(fout, 0);
    for (int t = w.first; t <= w.last; ++t) {
      Expr e;
      e.add(vars.ref(fout, 0, t), 1.0);
      e.add(vars.ref(fin, last, t - incoming.turnaround), -1.0);
      e.emit(sys, Sense::kLessEqual, 0.0, RowTag{RowFamily::kTurn, c.outgoing, c.incoming, t});
    }
  }

  // Monotonicity in time (6).
  for (int f = 0; f < nflights; ++f) {
    const Flight& fl = in.flights[f];
    for (int i = 0; i < static_cast<int>(fl.path.size()); ++i) {
      const TimeWindow& w = vars.window(f, i);
      for (int t = w.first + 1; t <= w.last; ++t) {
        Expr e;
        e.add(vars.ref(f, i, t), 1.0);
        e.add(vars.ref(f, i, t - 1), -1.0);
        e.emit(sys, Sense::kGreaterEqual, 0.0, RowTag{RowFamily::kMonotone, fl.id, fl.path[i], t});
      }
      auto chain = vars.chain(f, i);
      if (chain.size() >= 2) sys.monotone_chains.push_back(std::move(chain));
    }
  }

  // Objective. Over a window [a, b] with w_b = 1 and w_{a-1} = 0 the
  // telescoping sum gives sum_t t (w_t - w_{t-1}) = b - sum_{t<b} w_t, so
  //   beta_f = (c_g - c_a) dep + c_a arr - c_g d + c_a d - c_a r.
  for (int f = 0; f < nflights; ++f) {
    const Flight& fl = in.flights[f];
    const int last = static_cast<int>(fl.path.size()) - 1;
    const double cg = fl.ground_cost;
    const double ca = fl.air_cost;
    for (int col : vars.chain(f, 0)) sys.cost[col] += ca - cg;
    for (int col : vars.chain(f, last)) sys.cost[col] += -ca;
    sys.offset += (cg - ca) * vars.window(f, 0).last + ca * vars.window(f, last).last -
                  cg * fl.scheduled_departure + ca * fl.scheduled_departure -
                  ca * fl.scheduled_arrival;
  }
  return sys;
}

FlightSchedule make_flight_schedule(const Flight& flight, std::vector<int> sector_times) {
  FlightSchedule s;
  s.flight = flight.id;
  s.dep_sched = flight.scheduled_departure;
  s.arr_sched = flight.scheduled_arrival;
  s.dep_actual = sector_times.front();
  s.arr_actual = sector_times.back();
  s.ground_delay = s.dep_actual - s.dep_sched;
  s.air_delay = s.arr_actual - s.arr_sched - s.ground_delay;
  s.cost_beta = flight.ground_cost * s.ground_delay + flight.air_cost * s.air_delay;
  s.cost_alpha = flight.ground_cost * std::max(0, s.ground_delay) +
                 flight.air_cost * std::max(0, s.air_delay);
  s.sector_times = std::move(sector_times);
  return s;
}

std::vector<FlightSchedule> scheduled_trajectories(const Instance& inst) {
  std::vector<FlightSchedule> out;
  for (const auto& f : inst.flights) {
    std::vector<int> times{f.scheduled_departure};
    for (int l : f.transit_times) times.push_back(times.back() + l);
    out.push_back(make_flight_schedule(f, std::move(times)));
  }
  return out;
}

double total_cost(std::span<const FlightSchedule> schedule) {
  double sum = 0.0;
  for (const auto& s : schedule) sum += s.cost_beta;
  return sum;
}

std::optional<std::vector<double>> schedule_columns(const VariableMap& vars,
                                                    std::span<const FlightSchedule> schedule) {
  std::vector<double> values(vars.num_columns(), 0.0);
  for (std::size_t f = 0; f < schedule.size(); ++f) {
    const auto& times = schedule[f].sector_times;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const TimeWindow& w = vars.window(static_cast<int>(f), static_cast<int>(i));
      if (!w.contains(times[i])) return std::nullopt;
      for (int t = times[i]; t < w.last; ++t) {
        values[vars.ref(static_cast<int>(f), static_cast<int>(i), t).column] = 1.0;
      }
    }
  }
  return values;
}

ExtractedSchedule extract_schedule(const ValidatedInstance& inst, const VariableMap& vars,
                                   const ConstraintSystem& sys, std::span<const double> values,
                                   double tol) {
  std::vector<double> rounded(values.size());
  for (std::size_t c = 0; c < values.size(); ++c) {
    const double r = std::round(values[c]);
    if (std::fabs(values[c] - r) > tol || (r != 0.0 && r != 1.0)) {
      throw FractionalSolution(static_cast<int>(c), values[c]);
    }
    rounded[c] = r;
  }
  auto value_of = [&](const VarRef& v) {
    return v.is_column() ? static_cast<int>(rounded[v.column]) : v.constant;
  };

  ExtractedSchedule out;
  const auto& flights = inst->flights;
  for (int f = 0; f < static_cast<int>(flights.size()); ++f) {
    std::vector<int> times;
    for (int i = 0; i < static_cast<int>(flights[f].path.size()); ++i) {
      const TimeWindow& w = vars.window(f, i);
      int when = 0;
      for (int t = w.first; t <= w.last; ++t) {
        when += t * (value_of(vars.ref(f, i, t)) - value_of(vars.ref(f, i, t - 1)));
      }
      times.push_back(when);
    }
    out.flights.push_back(make_flight_schedule(flights[f], std::move(times)));
    out.total_beta += out.flights.back().cost_beta;
    out.total_alpha += out.flights.back().cost_alpha;
  }

  const double model = sys.objective_value(rounded);
  if (std::fabs(model - out.total_beta) > 1e-6 * std::max(1.0, std::fabs(model))) {
    throw Error("objective mismatch: system reports " + std::to_string(model) +
                " but schedule costs sum to " + std::to_string(out.total_beta));
  }
  return out;
}

}  // namespace tfmp
