// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tfmp/branch_and_bound.hpp"
#include "tfmp/decomposition.hpp"
#include "tfmp/formulation.hpp"
#include "tfmp/instance.hpp"

namespace tfmp {

enum class SolveMode { kRelax, kExact, kDecompose };

const char* to_string(SolveMode mode);

struct ScenarioOptions {
  SolveMode mode = SolveMode::kRelax;
  BranchAndBoundOptions solver;
};

struct ScenarioReport {
  std::string source;
  SolveMode mode = SolveMode::kRelax;
  bool solved = false;  // a schedule was produced
  std::string status;   // "optimal" or "infeasible"
  std::string note;     // reason when not solved
  std::vector<FlightSchedule> schedule;
  double objective = 0.0;      // as returned by the solver
  double schedule_cost = 0.0;  // sum of per-flight computed costs
  double real_cost = 0.0;      // sum of per-flight real costs
  // Relaxation details; absent in decompose mode.
  std::optional<bool> lp_integral;
  std::optional<double> lp_objective;
  long lp_iterations = 0;
  long nodes_explored = 0;
  int num_columns = 0;
  int num_rows = 0;
  double seconds = 0.0;
  std::optional<DecompositionTrace> trace;
};

// relax: solve the LP relaxation; when it is fractional, branch and bound
//   supplies the reported schedule and lp_integral is false.
// exact: branch and bound.
// decompose: conflict decomposition.
// An instance whose rows are violated at construction time reports
// infeasible. Limit errors propagate.
ScenarioReport run_scenario(const ValidatedInstance& inst, const ScenarioOptions& options,
                            std::string source = {});

// Parses and validates `path` first; parse errors propagate.
ScenarioReport run_scenario(const std::filesystem::path& path, const ScenarioOptions& options);

enum class ReportFormat { kTable, kCsv, kJsonLines };

// Column names shared by the CSV header and the JSON-lines records.
const std::vector<std::string>& report_columns();

std::string render_report(const ScenarioReport& report, ReportFormat format);

}  // namespace tfmp
