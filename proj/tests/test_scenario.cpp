#include <cmath>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "test_support.hpp"
#include "tfmp/experiment.hpp"
#include "tfmp/scenario.hpp"

using namespace tfmp;

namespace {

ScenarioReport run(const std::string& name, SolveMode mode) {
  ScenarioOptions opts;
  opts.mode = mode;
  return run_scenario(std::filesystem::path(support::data_path(name)), opts);
}

const FlightSchedule& row(const ScenarioReport& r, const std::string& id) {
  for (const auto& f : r.schedule) {
    if (f.flight == id) return f;
  }
  FAIL("no row for " << id);
  return r.schedule.front();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("conflicting flights hold the cheaper one") {
  const auto r = run("scenario1.tfmp", SolveMode::kRelax);
  REQUIRE(r.solved);
  CHECK(r.status == "optimal");
  CHECK(r.schedule_cost == 800.0);
  CHECK(std::fabs(r.objective - 800.0) <= 1e-6);
  CHECK(r.lp_integral == true);
  const auto& pbb = row(r, "Pu_Be_Ba");
  CHECK(pbb.dep_actual == 4);
  CHECK(pbb.arr_actual == 6);
  CHECK(pbb.ground_delay == 1);
  CHECK(pbb.air_delay == 0);
  for (const auto& f : r.schedule) {
    if (f.flight == "Pu_Be_Ba") continue;
    CHECK(f.ground_delay == 0);
    CHECK(f.air_delay == 0);
  }
  CHECK(std::fabs(r.objective - r.schedule_cost) <= 1e-6);
  const std::string table = render_report(r, ReportFormat::kTable);
  CHECK(table.find("objective: 800") != std::string::npos);
  CHECK(table.find("Real cost") == std::string::npos);
}

TEST_CASE("extra arrival capacity removes the delay") {
  const auto relax = run("scenario2.tfmp", SolveMode::kRelax);
  const auto exact = run("scenario2.tfmp", SolveMode::kExact);
  REQUIRE(relax.solved);
  REQUIRE(exact.solved);
  CHECK(relax.schedule_cost == 0.0);
  CHECK(exact.schedule_cost == 0.0);
  CHECK(exact.nodes_explored == 1);
  CHECK(exact.lp_integral == true);
  CHECK(render_report(relax, ReportFormat::kCsv) == render_report(exact, ReportFormat::kCsv));
  for (const auto& f : relax.schedule) CHECK(f.ground_delay + f.air_delay == 0);
}

TEST_CASE("early departure window") {
  const auto r = run("scenario3.tfmp", SolveMode::kRelax);
  REQUIRE(r.solved);
  const auto& g = row(r, "Go_Co_Ba");
  CHECK(g.dep_sched == 3);
  CHECK(g.dep_actual == 1);
  CHECK(g.ground_delay == -2);
  CHECK(g.cost_beta == -2000.0);
  CHECK(g.cost_alpha == 0.0);
  CHECK(std::fabs(r.objective - r.schedule_cost) <= 1e-6);
  const std::string table = render_report(r, ReportFormat::kTable);
  CHECK(table.find("Real cost") != std::string::npos);
  for (const char* other : {"scenario1.tfmp", "scenario2.tfmp", "scenario4.tfmp"}) {
    CHECK(render_report(run(other, SolveMode::kRelax), ReportFormat::kTable).find("Real cost") ==
          std::string::npos);
  }
}

TEST_CASE("turnaround forces a ground hold") {
  for (auto mode : {SolveMode::kRelax, SolveMode::kExact, SolveMode::kDecompose}) {
    const auto r = run("scenario4.tfmp", mode);
    REQUIRE(r.solved);
    const auto& g = row(r, "Go_Ca");
    CHECK(g.ground_delay == 2);
    CHECK(g.air_delay == 0);
    CHECK(g.dep_actual == row(r, "Mu_Pu_Go").arr_actual + 1);
    CHECK(r.schedule_cost == 1400.0);
    CHECK(std::fabs(r.objective - 1400.0) <= 1e-6);
  }
}

TEST_CASE("all modes agree on the fixtures") {
  for (const char* name : {"scenario1.tfmp", "scenario2.tfmp", "scenario3.tfmp", "scenario4.tfmp"}) {
    const auto relax = run(name, SolveMode::kRelax);
    const auto exact = run(name, SolveMode::kExact);
    const auto dec = run(name, SolveMode::kDecompose);
    CAPTURE(name);
    CHECK(std::fabs(relax.objective - exact.objective) <= 1e-6);
    CHECK(relax.schedule_cost == exact.schedule_cost);
    // Decomposition leaves conflict-free flights at their schedule, so it
    // can miss savings from early departures.
    CHECK(dec.schedule_cost >= exact.schedule_cost);
    if (std::string(name) != "scenario3.tfmp") CHECK(dec.schedule_cost == exact.schedule_cost);
    CHECK(dec.trace.has_value());
    CHECK_FALSE(dec.lp_integral.has_value());
  }
}

TEST_CASE("infeasible construction is reported, not thrown") {
  tfmp::Instance raw = tfmp::read_instance_file(support::data_path("scenario1.tfmp"));
  const auto inst = validate_instance(derive_time_windows(std::move(raw), 0, 0, 0));
  for (auto mode : {SolveMode::kRelax, SolveMode::kExact, SolveMode::kDecompose}) {
    ScenarioOptions opts;
    opts.mode = mode;
    const auto r = run_scenario(inst, opts, "held");
    CHECK_FALSE(r.solved);
    CHECK(r.status == "infeasible");
    CHECK_FALSE(r.note.empty());
  }
}

TEST_CASE("csv and json-lines share the column schema") {
  const auto r = run("scenario1.tfmp", SolveMode::kRelax);
  const auto csv = lines(render_report(r, ReportFormat::kCsv));
  REQUIRE(csv.size() == 1 + r.schedule.size());
  std::string header;
  for (const auto& c : report_columns()) header += (header.empty() ? "" : ",") + c;
  CHECK(csv[0] == header);
  CHECK(csv[3] == "Pu_Be_Ba,3,4,5,6,1,0,800,800");

  const auto json = lines(render_report(r, ReportFormat::kJsonLines));
  REQUIRE(json.size() == r.schedule.size() + 1);
  for (std::size_t i = 0; i < r.schedule.size(); ++i) {
    const auto rec = nlohmann::json::parse(json[i]);
    CHECK(rec.size() == report_columns().size());
    for (const auto& c : report_columns()) CHECK(rec.contains(c));
    CHECK(rec["flight"] == r.schedule[i].flight);
  }
  const auto summary = nlohmann::json::parse(json.back()).at("summary");
  CHECK(summary["objective"] == 800.0);
  CHECK(summary["lp_integral"] == true);
  CHECK(summary["columns"] == 33);
}

TEST_CASE("experiment bookkeeping") {
  GeneratorParams p = support::small_params(6, 0.5, 0.4);
  const auto a = run_experiment(40, p, 11);
  CHECK(a.instances == 40);
  CHECK(a.integral_lp + a.fractional_lp + a.infeasible == a.instances);
  CHECK(a.outcomes.size() == 40);
  CHECK(a.solver_errors == 0);

  const auto b = run_experiment(40, p, 11, 4);
  auto untimed = [](const ExperimentStats& s) {
    auto j = to_json(s, true);
    j.erase("seconds");
    return j.dump();
  };
  CHECK(untimed(a) == untimed(b));
  const auto c = run_experiment(40, p, 11);
  CHECK(c.integral_lp == a.integral_lp);
  CHECK(c.fractional_lp == a.fractional_lp);

  int fractional_solved = 0;
  for (const auto& o : a.outcomes) {
    if (o.category != InstanceClass::kFractionalLp || !o.ip_solved) continue;
    ++fractional_solved;
    CHECK(o.lp_objective <= o.ip_objective + 1e-7);
  }
  CHECK(a.gap_samples == fractional_solved);

  const auto j = to_json(a);
  CHECK(j["instances"] == 40);
  CHECK(j["seed"] == 11);
  CHECK_FALSE(j.contains("outcomes"));
}

TEST_CASE("full capacity is always integral") {
  GeneratorParams p;
  p.capacity_tightness = 1.0;
  for (std::uint64_t seed : {1u, 2u, 3u, 99u}) {
    const auto s = run_experiment(1, p, seed);
    CHECK(s.integral_lp == 1);
    CHECK(s.outcomes[0].lp_objective == doctest::Approx(0.0));
  }
  const auto many = run_experiment(30, p, 5, 2);
  CHECK(many.integral_lp == 30);
}
