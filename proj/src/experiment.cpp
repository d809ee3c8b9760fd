// SPDX-License-Identifier: Apache-2.0

#include "tfmp/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "tfmp/branch_and_bound.hpp"
#include "tfmp/errors.hpp"
#include "tfmp/formulation.hpp"
#include "tfmp/seed.hpp"
#include "tfmp/simplex.hpp"

namespace tfmp {

namespace {

constexpr int kRedraws = 10;

// A failed draw is retried from derived seeds before it counts as an error.
Instance generate(const GeneratorParams& params, std::uint64_t seed) {
  for (int k = 1;; ++k) {
    try {
      return generate_instance(params, k == 1 ? seed : derive_seed(seed, k));
    } catch (const GenerationError&) {
      if (k == kRedraws) throw;
    }
  }
}

InstanceOutcome solve_one(const GeneratorParams& params, std::uint64_t seed) {
  InstanceOutcome out;
  out.seed = seed;
  try {
    const ValidatedInstance inst = validate_instance(generate(params, seed));
    const VariableMap vars = build_variables(inst);
    ConstraintSystem sys;
    try {
      sys = build_system(inst, vars);
    } catch (const InfeasibleConstruction&) {
      out.category = InstanceClass::kInfeasible;
      return out;
    }
    out.free_columns = sys.num_columns;
    const LpSolution lp = solve_lp(sys);
    if (lp.status != LpStatus::kOptimal) {
      out.category = InstanceClass::kInfeasible;
      return out;
    }
    out.lp_objective = lp.objective;
    if (is_integral(lp).integral) {
      out.category = InstanceClass::kIntegralLp;
      return out;
    }
    out.category = InstanceClass::kFractionalLp;
    const IpSolution ip = solve_ip(sys);
    if (ip.status == IpStatus::kOptimal) {
      out.ip_solved = true;
      out.ip_objective = ip.objective;
    }
  } catch (const std::exception& e) {
    out.category = InstanceClass::kInfeasible;
    out.error = e.what();
  }
  return out;
}

const char* class_name(InstanceClass c) {
  switch (c) {
    case InstanceClass::kIntegralLp:
      return "integral";
    case InstanceClass::kFractionalLp:
      return "fractional";
    case InstanceClass::kInfeasible:
      break;
  }
  return "infeasible";
}

}  // namespace

double ExperimentStats::integral_fraction() const {
  return instances == 0 ? 0.0 : static_cast<double>(integral_lp) / instances;
}

ExperimentStats run_experiment(int count, const GeneratorParams& params, std::uint64_t seed,
                               int jobs) {
  if (count < 1) throw std::invalid_argument("experiment count must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  ExperimentStats stats;
  stats.instances = count;
  stats.seed = seed;
  stats.params = params;
  stats.outcomes.resize(count);

  auto work = [&](int first, int stride) {
    for (int i = first; i < count; i += stride) {
      stats.outcomes[i] = solve_one(params, derive_seed(seed, static_cast<std::uint64_t>(i)));
    }
  };
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (int k = 0; k < jobs; ++k) pool.emplace_back(work, k, jobs);
  }

  double gap_sum = 0.0;
  for (const auto& o : stats.outcomes) {
    switch (o.category) {
      case InstanceClass::kIntegralLp:
        ++stats.integral_lp;
        break;
      case InstanceClass::kFractionalLp:
        ++stats.fractional_lp;
        if (o.ip_solved) {
          gap_sum += o.ip_objective - o.lp_objective;
          ++stats.gap_samples;
        }
        break;
      case InstanceClass::kInfeasible:
        ++stats.infeasible;
        if (!o.error.empty()) ++stats.solver_errors;
        break;
    }
  }
  if (stats.gap_samples > 0) stats.mean_objective_gap = gap_sum / stats.gap_samples;
  stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return stats;
}

nlohmann::json to_json(const ExperimentStats& s, bool with_outcomes) {
  const GeneratorParams& p = s.params;
  nlohmann::json j{
      {"instances", s.instances},
      {"integral_lp", s.integral_lp},
      {"fractional_lp", s.fractional_lp},
      {"infeasible", s.infeasible},
      {"solver_errors", s.solver_errors},
      {"integral_fraction", s.integral_fraction()},
      {"mean_objective_gap", s.mean_objective_gap},
      {"gap_samples", s.gap_samples},
      {"seed", s.seed},
      {"seconds", s.seconds},
      {"params",
       {{"flights", p.flights},
        {"sectors", p.sectors},
        {"horizon", p.horizon},
        {"continued_fraction", p.continued_fraction},
        {"capacity_tightness", p.capacity_tightness},
        {"max_ground_hold", p.max_ground_hold},
        {"max_air_hold", p.max_air_hold},
        {"allow_early", p.allow_early},
        {"max_transit", p.max_transit}}},
  };
  if (with_outcomes) {
    auto& list = j["outcomes"] = nlohmann::json::array();
    for (const auto& o : s.outcomes) {
      nlohmann::json item{{"seed", o.seed},
                          {"class", class_name(o.category)},
                          {"columns", o.free_columns}};
      if (o.category != InstanceClass::kInfeasible) item["lp_objective"] = o.lp_objective;
      if (o.ip_solved) item["ip_objective"] = o.ip_objective;
      if (!o.error.empty()) item["error"] = o.error;
      list.push_back(std::move(item));
    }
  }
  return j;
}

std::string summary_line(const ExperimentStats& s) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "instances=%d integral=%d fractional=%d infeasible=%d (errors %d) "
                "integral_fraction=%.4f mean_gap=%.4f seed=%llu",
                s.instances, s.integral_lp, s.fractional_lp, s.infeasible, s.solver_errors,
                s.integral_fraction(), s.mean_objective_gap,
                static_cast<unsigned long long>(s.seed));
  return buf;
}

}  // namespace tfmp
