// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "tfmp/generator.hpp"

namespace tfmp {

enum class InstanceClass { kIntegralLp, kFractionalLp, kInfeasible };

struct InstanceOutcome {
  std::uint64_t seed = 0;  // generator seed actually used
  InstanceClass category = InstanceClass::kInfeasible;
  int free_columns = 0;
  double lp_objective = 0.0;  // valid unless infeasible
  bool ip_solved = false;     // fractional cases only
  double ip_objective = 0.0;
  // Generation or solver failure, counted under `infeasible` with the
  // message kept here.
  std::string error;
};

struct ExperimentStats {
  int instances = 0;
  int integral_lp = 0;
  int fractional_lp = 0;
  int infeasible = 0;
  // Subset of `infeasible` caused by generation or solver errors rather than
  // an infeasible relaxation.
  int solver_errors = 0;
  // Mean of IP - LP over fractional instances whose IP was solved; 0 when
  // there are none.
  double mean_objective_gap = 0.0;
  int gap_samples = 0;
  std::uint64_t seed = 0;
  GeneratorParams params;
  double seconds = 0.0;
  std::vector<InstanceOutcome> outcomes;  // indexed by instance number

  double integral_fraction() const;
};

// Generates `count` instances from per-index sub-seeds of `seed`, solves each
// relaxation and classifies it. Fractional relaxations are also solved
// exactly. Per-instance failures are counted, never thrown. `jobs` > 1 solves
// instances on that many threads; the result does not depend on it.
ExperimentStats run_experiment(int count, const GeneratorParams& params, std::uint64_t seed,
                               int jobs = 1);

nlohmann::json to_json(const ExperimentStats& stats, bool with_outcomes = false);

// One human-readable line with the counts and the integral fraction.
std::string summary_line(const ExperimentStats& stats);

}  // namespace tfmp
