#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "test_support.hpp"
#include "tfmp/errors.hpp"
#include "tfmp/exact.hpp"
#include "tfmp/seed.hpp"

using namespace tfmp;

namespace {

ValidatedInstance one_flight_with_windows(TimeWindow dep, TimeWindow arr) {
  Instance inst = support::one_flight(dep.first, 11);
  inst.flights[0].windows = {dep, arr};
  return validate_instance(inst);
}

const Row* find_row(const ConstraintSystem& sys, RowFamily family, const std::string& subject,
                    int time) {
  for (const auto& r : sys.rows) {
    if (r.tag.family == family && r.tag.subject == subject && r.tag.time == time) return &r;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("variable elimination") {
  SUBCASE("singleton window has no free column") {
    const auto vi = one_flight_with_windows({5, 5}, {6, 8});
    const VariableMap vars = build_variables(vi);
    CHECK(vars.chain(0, 0).empty());
    CHECK(vars.ref(0, 0, 5).constant == 1);
    CHECK_FALSE(vars.ref(0, 0, 5).is_column());
    CHECK(vars.num_columns() == 2);
  }
  SUBCASE("window {3,4,5} keeps 3 and 4") {
    const auto vi = one_flight_with_windows({3, 5}, {4, 4});
    const VariableMap vars = build_variables(vi);
    REQUIRE(vars.num_columns() == 2);
    CHECK(vars.key(0) == VarKey{0, 0, 3});
    CHECK(vars.key(1) == VarKey{0, 0, 4});
    CHECK(vars.ref(0, 0, 2).constant == 0);
    CHECK(vars.ref(0, 0, 6).constant == 1);
    const auto fixed = vars.fixed();
    CHECK(std::find(fixed.begin(), fixed.end(), std::pair{VarKey{0, 0, 5}, 1}) != fixed.end());
    CHECK(std::find(fixed.begin(), fixed.end(), std::pair{VarKey{0, 1, 4}, 1}) != fixed.end());
  }
  SUBCASE("baseline column count equals the window tally") {
    for (const char* name : {"scenario1.tfmp", "scenario3.tfmp", "scenario4.tfmp"}) {
      const auto vi = support::load(name);
      const VariableMap vars = build_variables(vi);
      CHECK(vars.num_columns() == oracle::free_column_tally(vi.get()));
      std::size_t pairs = 0;
      for (const auto& f : vi->flights) pairs += f.path.size();
      CHECK(vars.fixed().size() == pairs);
      // Columns are ordered by flight, path position, then time.
      CHECK(std::is_sorted(vars.keys().begin(), vars.keys().end()));
      std::set<VarKey> unique(vars.keys().begin(), vars.keys().end());
      CHECK(unique.size() == vars.keys().size());
    }
  }
}

TEST_CASE("monotone rows for window {3,4,5}") {
  const auto vi = one_flight_with_windows({3, 5}, {4, 4});
  const auto b = support::build(vi);
  const Row* r4 = find_row(b.sys, RowFamily::kMonotone, "F", 4);
  const Row* r5 = find_row(b.sys, RowFamily::kMonotone, "F", 5);
  REQUIRE(r4 != nullptr);
  REQUIRE(r5 != nullptr);
  // w4 - w3 >= 0
  CHECK(r4->sense == Sense::kGreaterEqual);
  CHECK(r4->rhs == 0.0);
  REQUIRE(r4->entries.size() == 2);
  // 1 - w4 >= 0, stored as -w4 >= -1
  CHECK(r5->sense == Sense::kGreaterEqual);
  REQUIRE(r5->entries.size() == 1);
  CHECK(r5->entries[0].column == 1);
  CHECK(r5->entries[0].coef == -1.0);
  CHECK(r5->rhs == -1.0);
  CHECK(find_row(b.sys, RowFamily::kMonotone, "F", 3) == nullptr);
}

TEST_CASE("fully determined flight") {
  const auto vi = one_flight_with_windows({4, 4}, {6, 6});
  const auto b = support::build(vi);
  CHECK(b.sys.num_columns == 0);
  CHECK(b.sys.rows.empty());
  // departure 4 vs 4, arrival 6 vs 5: one period of air delay at cost 3.
  CHECK(b.sys.offset == 3.0);
  const auto ex = extract_schedule(vi, b.vars, b.sys, std::vector<double>{});
  CHECK(ex.flights[0].air_delay == 1);
  CHECK(ex.total_beta == 3.0);
}

TEST_CASE("Bangalore arrival row in the conflicting fixture") {
  const auto vi = support::load("scenario1.tfmp");
  const auto b = support::build(vi);
  const Row* row = find_row(b.sys, RowFamily::kArrCap, "Bangalore", 5);
  REQUIRE(row != nullptr);
  CHECK(row->sense == Sense::kLessEqual);
  CHECK(row->rhs == 1.0);
  REQUIRE(row->entries.size() == 2);
  std::set<int> flights;
  for (const auto& e : row->entries) {
    CHECK(e.coef == 1.0);
    flights.insert(b.vars.key(e.column).flight);
  }
  CHECK(flights == std::set<int>{2, 3});
}

TEST_CASE("system shape") {
  for (const char* name : {"scenario1.tfmp", "scenario2.tfmp", "scenario3.tfmp", "scenario4.tfmp"}) {
    const auto vi = support::load(name);
    const auto b = support::build(vi);
    CAPTURE(name);
    for (int c = 0; c < b.sys.num_columns; ++c) {
      CHECK(b.sys.lower[c] == 0.0);
      CHECK(b.sys.upper[c] == 1.0);
    }
    int previous_family = -1;
    std::map<RowFamily, int> counts;
    for (const auto& r : b.sys.rows) {
      REQUIRE_FALSE(r.entries.empty());
      for (const auto& e : r.entries) {
        CHECK(e.column >= 0);
        CHECK(e.column < b.sys.num_columns);
      }
      CHECK(static_cast<int>(r.tag.family) >= previous_family);
      previous_family = static_cast<int>(r.tag.family);
      ++counts[r.tag.family];
    }
    const auto expected = oracle::row_tally(vi.get());
    for (auto family : {RowFamily::kDepCap, RowFamily::kArrCap, RowFamily::kSectorCap,
                        RowFamily::kTransit, RowFamily::kTurn, RowFamily::kMonotone}) {
      CAPTURE(to_string(family));
      CHECK(counts[family] == (expected.contains(family) ? expected.at(family) : 0));
    }
  }
}

TEST_CASE("row tally on generated instances") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto vi = validate_instance(
        generate_instance(support::small_params(4, seed % 2 ? 1.0 : 0.5, 0.5), seed));
    ConstraintSystem sys;
    try {
      sys = support::build(vi).sys;
    } catch (const InfeasibleConstruction&) {
      continue;
    }
    std::map<RowFamily, int> counts;
    for (const auto& r : sys.rows) ++counts[r.tag.family];
    const auto expected = oracle::row_tally(vi.get());
    for (const auto& [family, n] : expected) {
      CAPTURE(seed);
      CHECK(counts[family] == n);
    }
    CHECK(sys.num_columns == oracle::free_column_tally(vi.get()));
  }
}

TEST_CASE("impossible turnaround is rejected at construction") {
  Instance inst = read_instance_file(support::data_path("scenario4.tfmp"));
  inst = derive_time_windows(inst);
  // Go_Ca may only leave at 2 while its aircraft lands no earlier than 3.
  auto& go_ca = inst.flights[*inst.flight_index("Go_Ca")];
  go_ca.windows = {TimeWindow{2, 2}, TimeWindow{4, 4}};
  const auto vi = validate_instance(inst);
  const VariableMap vars = build_variables(vi);
  CHECK_THROWS_AS(build_system(vi, vars), InfeasibleConstruction);
}

TEST_CASE("schedule extraction on the fixtures") {
  auto solve_at = [](const std::string& name, std::vector<std::vector<int>> times) {
    const auto vi = support::load(name);
    const auto b = support::build(vi);
    std::vector<FlightSchedule> sched;
    for (std::size_t f = 0; f < times.size(); ++f) {
      sched.push_back(make_flight_schedule(vi->flights[f], times[f]));
    }
    const auto values = schedule_columns(b.vars, sched);
    REQUIRE(values.has_value());
    return extract_schedule(vi, b.vars, b.sys, *values);
  };
  SUBCASE("conflicting fixture with Pu_Be_Ba held one period") {
    const auto ex = solve_at("scenario1.tfmp", {{1, 2, 3}, {4, 5}, {4, 5, 6}, {3, 4, 5}});
    CHECK(ex.flights[2].dep_actual == 4);
    CHECK(ex.flights[2].ground_delay == 1);
    CHECK(ex.flights[2].air_delay == 0);
    CHECK(ex.total_beta == 800.0);
  }
  SUBCASE("early running gives a negative component") {
    const auto ex = solve_at("scenario3.tfmp", {{1, 2, 3}, {4, 5}, {3, 4, 5}, {1, 2, 3}});
    const auto& g = ex.flights[3];
    CHECK(g.dep_actual == 1);
    CHECK(g.arr_actual == 3);
    CHECK(g.ground_delay == -2);
    CHECK(g.air_delay == 0);
    CHECK(g.cost_beta == -2000.0);
    CHECK(g.cost_alpha == 0.0);
    CHECK(g.has_negative_component());
  }
  SUBCASE("fractional values are refused") {
    const auto vi = support::load("scenario2.tfmp");
    const auto b = support::build(vi);
    std::vector<double> values(b.sys.num_columns, 1.0);
    values[3] = 0.5;
    CHECK_THROWS_AS(extract_schedule(vi, b.vars, b.sys, values), FractionalSolution);
    values[3] = 1.0 - 1e-9;
    CHECK_NOTHROW(extract_schedule(vi, b.vars, b.sys, values));
  }
}

TEST_CASE("telescoping identity over monotone vectors") {
  // For w monotone on [a, b] with w_b = 1 and w_{a-1} = 0, the weighted
  // differences sum to the first time w reaches 1.
  for (int len = 1; len <= 6; ++len) {
    const int a = 3;
    for (int first_one = 0; first_one < len; ++first_one) {
      std::vector<int> w(len);
      for (int k = 0; k < len; ++k) w[k] = k >= first_one ? 1 : 0;
      int sum = 0;
      for (int k = 0; k < len; ++k) sum += (a + k) * (w[k] - (k == 0 ? 0 : w[k - 1]));
      CHECK(sum == a + first_one);

      // Same value through the model on a one-flight instance.
      const auto vi = one_flight_with_windows({a, a + len - 1}, {a + 1, a + len});
      const auto b = support::build(vi);
      // Arrival one period after departure keeps the point feasible.
      std::vector<double> values(b.sys.num_columns, 1.0);
      for (int k = 0; k + 1 < len; ++k) {
        values[k] = w[k];
        values[len - 1 + k] = w[k];
      }
      const std::vector<int> point(values.begin(), values.end());
      REQUIRE(ExactSystem(b.sys).feasible(point));
      const auto ex = extract_schedule(vi, b.vars, b.sys, values);
      CHECK(ex.flights[0].dep_actual == a + first_one);
    }
  }
}

TEST_CASE("objective equals per-flight delay cost on feasible points") {
  const auto vi = support::load_with_holds("scenario1.tfmp", 1, 0, 0);
  const auto b = support::build(vi);
  const auto points = oracle::all_points(b.sys);
  REQUIRE(points.size() > 10);
  std::mt19937_64 rng(derive_seed(2024, 0));
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  const ExactSystem exact(b.sys);
  for (std::size_t k = 0; k < std::min<std::size_t>(100, order.size()); ++k) {
    const auto& p = points[order[k]];
    // Times read straight off the point: the first window time with value 1.
    Rational expected = 0;
    for (std::size_t f = 0; f < vi->flights.size(); ++f) {
      const Flight& fl = vi->flights[f];
      auto first_time = [&](int pos) {
        const TimeWindow& w = *fl.windows[pos];
        for (int t = w.first; t < w.last; ++t) {
          const VarRef r = b.vars.ref(static_cast<int>(f), pos, t);
          if (p[r.column] == 1) return t;
        }
        return w.last;
      };
      const int dep = first_time(0);
      const int arr = first_time(static_cast<int>(fl.path.size()) - 1);
      const int g = dep - fl.scheduled_departure;
      const int a = arr - fl.scheduled_arrival - g;
      expected += Rational(static_cast<long long>(fl.ground_cost)) * g +
                  Rational(static_cast<long long>(fl.air_cost)) * a;
    }
    CHECK(exact.objective(p) == expected);
  }
}
