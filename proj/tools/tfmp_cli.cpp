// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: solve, analyze, gen, experiment.
// Exit codes: 0 success, 1 infeasible, 2 input error, 3 internal limit.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tfmp/decomposition.hpp"
#include "tfmp/errors.hpp"
#include "tfmp/experiment.hpp"
#include "tfmp/formulation.hpp"
#include "tfmp/generator.hpp"
#include "tfmp/instance_io.hpp"
#include "tfmp/polyhedral.hpp"
#include "tfmp/scenario.hpp"

namespace {

enum Exit { kOk = 0, kInfeasible = 1, kInputError = 2, kLimit = 3 };

struct SolveArgs {
  std::string file;
  bool relax = false;
  bool exact = false;
  bool decompose = false;
  std::string format = "table";
  long node_limit = 1'000'000;
};

struct AnalyzeArgs {
  std::string file;
  int cap = tfmp::kDefaultEnumerationCap;
  std::optional<int> ground_hold;
  std::optional<int> air_hold;
  std::optional<int> early;
  int trials = 50;
  std::uint64_t seed = 1;
  bool rows = false;
};

struct GenArgs {
  tfmp::GeneratorParams params;
  std::uint64_t seed = 1;
  std::string output;
};

struct ExperimentArgs {
  tfmp::GeneratorParams params;
  int count = 100;
  std::uint64_t seed = 1;
  int jobs = 1;
  bool outcomes = false;
};

void add_generator_options(CLI::App* cmd, tfmp::GeneratorParams& p) {
  cmd->add_option("--flights", p.flights, "Number of flights")->check(CLI::PositiveNumber);
  cmd->add_option("--sectors", p.sectors, "Number of sectors")->check(CLI::PositiveNumber);
  cmd->add_option("--horizon", p.horizon, "Number of periods")->check(CLI::PositiveNumber);
  cmd->add_option("--continued", p.continued_fraction, "Fraction of continued flights")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--tightness", p.capacity_tightness, "Capacity tightness in (0, 1]");
  cmd->add_option("--ground-hold", p.max_ground_hold, "Maximum ground hold");
  cmd->add_option("--air-hold", p.max_air_hold, "Maximum air hold");
  cmd->add_option("--early", p.allow_early, "Periods a flight may run early");
  cmd->add_option("--max-transit", p.max_transit, "Largest transit time");
}

int run_solve(const SolveArgs& args) {
  tfmp::ScenarioOptions options;
  options.mode = args.exact       ? tfmp::SolveMode::kExact
                 : args.decompose ? tfmp::SolveMode::kDecompose
                                  : tfmp::SolveMode::kRelax;
  options.solver.node_limit = args.node_limit;
  static const std::map<std::string, tfmp::ReportFormat> formats = {
      {"table", tfmp::ReportFormat::kTable},
      {"csv", tfmp::ReportFormat::kCsv},
      {"json-lines", tfmp::ReportFormat::kJsonLines}};
  const tfmp::ScenarioReport report = tfmp::run_scenario(args.file, options);
  std::cout << tfmp::render_report(report, formats.at(args.format));
  return report.solved ? kOk : kInfeasible;
}

int run_analyze(const AnalyzeArgs& args) {
  tfmp::Instance raw = tfmp::read_instance_file(args.file);
  if (args.ground_hold) raw.window_policy.max_ground_hold = *args.ground_hold;
  if (args.air_hold) raw.window_policy.max_air_hold = *args.air_hold;
  if (args.early) raw.window_policy.allow_early = *args.early;
  const tfmp::ValidatedInstance inst =
      tfmp::validate_instance(tfmp::derive_time_windows(std::move(raw)));

  const tfmp::VariableMap vars = tfmp::build_variables(inst);
  tfmp::ConstraintSystem sys;
  try {
    sys = tfmp::build_system(inst, vars);
  } catch (const tfmp::InfeasibleConstruction& e) {
    std::cout << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  }
  std::cout << "instance: " << args.file << "\ncolumns: " << sys.num_columns
            << "  rows: " << sys.rows.size() << "  cap: " << args.cap << '\n';

  const tfmp::PointSet points = tfmp::enumerate_feasible(sys, args.cap);
  std::cout << "feasible 0/1 points: " << points.points.size() << '\n';
  if (points.points.empty()) return kInfeasible;

  const auto faces = tfmp::classify_faces(sys, points);
  const int dim = faces.empty() ? tfmp::affine_dimension(points.points) : faces.front().polytope_dim;
  std::cout << "dim conv(S): " << dim << '\n';

  std::map<std::string, std::pair<int, int>> per_family;  // facets, rows
  for (const auto& f : faces) {
    auto& [facets, rows] = per_family[tfmp::to_string(f.row_tag.family)];
    ++rows;
    if (f.is_facet) ++facets;
    if (args.rows) {
      std::cout << "  " << f.row_tag.label() << "  tight " << f.tight_points.size() << "  face dim "
                << f.face_dim << (f.is_facet ? "  facet" : "") << '\n';
    }
  }
  for (const auto& [family, counts] : per_family) {
    std::cout << "facets " << family << ": " << counts.first << "/" << counts.second << '\n';
  }

  const tfmp::TheoremReport thm = tfmp::verify_main_theorem(sys, points, args.trials, args.seed);
  std::cout << "objectives: " << thm.trials << "  seed: " << args.seed
            << "  hull agreements: " << thm.hull_agreements
            << "  disagreements: " << thm.hull_disagreements << '\n'
            << "relaxation = integer optimum: " << thm.match
            << "  relaxation below: " << thm.relaxation_strictly_below
            << "  relaxation above: " << thm.relaxation_above << '\n';
  if (thm.system_objective) {
    std::cout << "delay objective: enumeration " << thm.system_objective->enumeration_opt
              << "  relaxation " << thm.system_objective->relaxation_opt << '\n';
  }
  return kOk;
}

int run_gen(const GenArgs& args) {
  const tfmp::Instance inst = tfmp::generate_instance(args.params, args.seed);
  const std::string text = "# generated, seed=" + std::to_string(args.seed) + "\n" +
                           tfmp::write_instance(inst);
  if (args.output.empty() || args.output == "-") {
    std::cout << text;
  } else {
    std::ofstream out(args.output, std::ios::binary);
    if (!out) throw tfmp::Error("cannot write " + args.output);
    out << text;
  }
  return kOk;
}

int run_experiment(const ExperimentArgs& args) {
  const tfmp::ExperimentStats stats =
      tfmp::run_experiment(args.count, args.params, args.seed, args.jobs);
  std::cout << tfmp::to_json(stats, args.outcomes).dump() << '\n';
  std::cerr << tfmp::summary_line(stats) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-indexed traffic flow management toolkit"};
  app.require_subcommand(1);

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve an instance file and print the schedule");
  solve_cmd->add_option("file", solve.file, "Instance file")->required();
  auto* relax = solve_cmd->add_flag("--relax", solve.relax, "Linear relaxation (default)");
  auto* exact = solve_cmd->add_flag("--exact", solve.exact, "Branch and bound");
  auto* decompose =
      solve_cmd->add_flag("--decompose", solve.decompose, "Conflict decomposition");
  relax->excludes(exact)->excludes(decompose);
  exact->excludes(decompose);
  solve_cmd->add_option("--format", solve.format, "table, csv or json-lines")
      ->check(CLI::IsMember({"table", "csv", "json-lines"}));
  solve_cmd->add_option("--node-limit", solve.node_limit, "Branch-and-bound node limit");

  AnalyzeArgs analyze;
  CLI::App* analyze_cmd =
      app.add_subcommand("analyze", "Enumerate 0/1 points and classify rows (tiny instances)");
  analyze_cmd->add_option("file", analyze.file, "Instance file")->required();
  analyze_cmd->add_option("--cap", analyze.cap, "Largest number of free columns to enumerate");
  analyze_cmd->add_option("--ground-hold", analyze.ground_hold, "Override max_ground_hold");
  analyze_cmd->add_option("--air-hold", analyze.air_hold, "Override max_air_hold");
  analyze_cmd->add_option("--early", analyze.early, "Override allow_early");
  analyze_cmd->add_option("--trials", analyze.trials, "Random objectives to test");
  analyze_cmd->add_option("--seed", analyze.seed, "Seed for the random objectives");
  analyze_cmd->add_flag("--rows", analyze.rows, "Print one line per row");

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  add_generator_options(gen_cmd, gen.params);
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("-o,--output", gen.output, "Output file (default stdout)");

  ExperimentArgs exp;
  CLI::App* exp_cmd =
      app.add_subcommand("experiment", "Classify relaxations of many generated instances");
  add_generator_options(exp_cmd, exp.params);
  exp_cmd->add_option("--count", exp.count, "Number of instances")->check(CLI::PositiveNumber);
  exp_cmd->add_option("--seed", exp.seed, "Master seed");
  exp_cmd->add_option("--jobs", exp.jobs, "Worker threads")->check(CLI::PositiveNumber);
  exp_cmd->add_flag("--outcomes", exp.outcomes, "Include per-instance outcomes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*solve_cmd) return run_solve(solve);
    if (*analyze_cmd) return run_analyze(analyze);
    if (*gen_cmd) return run_gen(gen);
    return run_experiment(exp);
  } catch (const tfmp::LimitError& e) {
    std::cerr << "limit: " << e.what() << '\n';
    return kLimit;
  } catch (const tfmp::NonConvergence& e) {
    std::cerr << "limit: " << e.what() << '\n';
    return kLimit;
  } catch (const tfmp::InfeasibleSubproblem& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const tfmp::ParseError& e) {
    std::cerr << e.what() << '\n';
    return kInputError;
  } catch (const tfmp::ValidationError& e) {
    std::cerr << "invalid instance: " << e.what() << '\n';
    return kInputError;
  } catch (const tfmp::WindowError& e) {
    std::cerr << "invalid instance: " << e.what() << '\n';
    return kInputError;
  } catch (const tfmp::GenerationError& e) {
    std::cerr << "generation failed: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
}
