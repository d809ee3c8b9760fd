// SPDX-License-Identifier: Apache-2.0

#include "tfmp/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "tfmp/instance_io.hpp"
#include "tfmp/simplex.hpp"

namespace tfmp {

const char* to_string(SolveMode mode) {
  switch (mode) {
    case SolveMode::kRelax:
      return "relax";
    case SolveMode::kExact:
      return "exact";
    case SolveMode::kDecompose:
      break;
  }
  return "decompose";
}

namespace {

void fill_schedule(ScenarioReport& report, std::vector<FlightSchedule> schedule) {
  report.schedule = std::move(schedule);
  report.schedule_cost = total_cost(report.schedule);
  report.real_cost = 0.0;
  for (const auto& f : report.schedule) report.real_cost += f.cost_alpha;
  report.solved = true;
  report.status = "optimal";
}

void mark_infeasible(ScenarioReport& report, std::string note) {
  report.solved = false;
  report.status = "infeasible";
  report.note = std::move(note);
}

std::string format_number(double v) {
  if (v == static_cast<long long>(v)) return std::to_string(static_cast<long long>(v));
  std::ostringstream out;
  out << std::setprecision(10) << v;
  return out.str();
}

bool any_negative(const ScenarioReport& report) {
  return std::any_of(report.schedule.begin(), report.schedule.end(),
                     [](const FlightSchedule& f) { return f.has_negative_component(); });
}

std::string render_table(const ScenarioReport& r) {
  const bool show_alpha = any_negative(r);
  std::vector<std::string> head = {"Flight",       "Dep sched", "Dep actual", "Arr sched",
                                   "Arr actual",   "Ground delay", "Air delay", "Cost"};
  if (show_alpha) head.push_back("Real cost");

  std::vector<std::vector<std::string>> rows;
  for (const auto& f : r.schedule) {
    std::vector<std::string> row = {f.flight,
                                    std::to_string(f.dep_sched),
                                    std::to_string(f.dep_actual),
                                    std::to_string(f.arr_sched),
                                    std::to_string(f.arr_actual),
                                    std::to_string(f.ground_delay),
                                    std::to_string(f.air_delay),
                                    format_number(f.cost_beta)};
    if (show_alpha) row.push_back(format_number(f.cost_alpha));
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> width(head.size());
  for (std::size_t c = 0; c < head.size(); ++c) {
    width[c] = head[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
  }

  std::ostringstream out;
  out << "scenario: " << (r.source.empty() ? "<instance>" : r.source) << "  mode: " << to_string(r.mode)
      << "  status: " << r.status << '\n';
  if (!r.solved) {
    if (!r.note.empty()) out << "reason: " << r.note << '\n';
    return out.str();
  }
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c == 0) {
        out << std::left << std::setw(static_cast<int>(width[c])) << cells[c];
      } else {
        out << "  " << std::right << std::setw(static_cast<int>(width[c])) << cells[c];
      }
    }
    out << '\n';
  };
  emit(head);
  std::size_t total = 0;
  for (auto w : width) total += w + 2;
  out << std::string(total - 2, '-') << '\n';
  for (const auto& row : rows) emit(row);
  out << std::string(total - 2, '-') << '\n';

  out << "objective: " << format_number(r.objective);
  if (show_alpha) out << "  real cost: " << format_number(r.real_cost);
  if (r.lp_integral) {
    out << "  lp integral: " << (*r.lp_integral ? "yes" : "no");
    if (!*r.lp_integral && r.lp_objective) out << " (lp bound " << format_number(*r.lp_objective) << ")";
  }
  out << '\n';
  out << "columns: " << r.num_columns << "  rows: " << r.num_rows;
  if (r.mode != SolveMode::kDecompose) {
    out << "  simplex iterations: " << r.lp_iterations << "  nodes: " << r.nodes_explored;
  }
  out << "  time: " << std::fixed << std::setprecision(4) << r.seconds << " s\n";
  if (r.trace) {
    out << "decomposition: iterations " << r.trace->iterations.size() << "  conflict set size "
        << r.trace->final_conflict_set.size()
        << (r.trace->collapsed_to_full ? "  (collapsed to the full problem)" : "") << '\n';
  }
  return out.str();
}

nlohmann::json flight_record(const FlightSchedule& f) {
  return nlohmann::json{{"flight", f.flight},         {"dep_sched", f.dep_sched},
                        {"dep_actual", f.dep_actual}, {"arr_sched", f.arr_sched},
                        {"arr_actual", f.arr_actual}, {"ground_delay", f.ground_delay},
                        {"air_delay", f.air_delay},   {"cost_beta", f.cost_beta},
                        {"cost_alpha", f.cost_alpha}};
}

std::string render_csv(const ScenarioReport& r) {
  std::ostringstream out;
  const auto& cols = report_columns();
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
  out << '\n';
  for (const auto& f : r.schedule) {
    out << f.flight << ',' << f.dep_sched << ',' << f.dep_actual << ',' << f.arr_sched << ','
        << f.arr_actual << ',' << f.ground_delay << ',' << f.air_delay << ','
        << format_number(f.cost_beta) << ',' << format_number(f.cost_alpha) << '\n';
  }
  return out.str();
}

std::string render_json_lines(const ScenarioReport& r) {
  std::ostringstream out;
  for (const auto& f : r.schedule) out << flight_record(f).dump() << '\n';
  nlohmann::json summary{{"source", r.source},
                         {"mode", to_string(r.mode)},
                         {"status", r.status},
                         {"objective", r.objective},
                         {"schedule_cost", r.schedule_cost},
                         {"real_cost", r.real_cost},
                         {"columns", r.num_columns},
                         {"rows", r.num_rows},
                         {"nodes_explored", r.nodes_explored},
                         {"simplex_iterations", r.lp_iterations},
                         {"seconds", r.seconds}};
  if (r.lp_integral) summary["lp_integral"] = *r.lp_integral;
  if (r.lp_objective) summary["lp_objective"] = *r.lp_objective;
  if (!r.note.empty()) summary["note"] = r.note;
  if (r.trace) {
    summary["decomposition"] = {{"iterations", r.trace->iterations.size()},
                                {"conflict_set", r.trace->final_conflict_set},
                                {"collapsed_to_full", r.trace->collapsed_to_full}};
  }
  out << nlohmann::json{{"summary", summary}}.dump() << '\n';
  return out.str();
}

}  // namespace

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols = {"flight",     "dep_sched",    "dep_actual",
                                                "arr_sched",  "arr_actual",   "ground_delay",
                                                "air_delay",  "cost_beta",    "cost_alpha"};
  return cols;
}

ScenarioReport run_scenario(const ValidatedInstance& inst, const ScenarioOptions& options,
                            std::string source) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  ScenarioReport report;
  report.source = std::move(source);
  report.mode = options.mode;

  const VariableMap vars = build_variables(inst);
  ConstraintSystem sys;
  try {
    sys = build_system(inst, vars);
  } catch (const InfeasibleConstruction& e) {
    mark_infeasible(report, e.what());
    report.num_columns = vars.num_columns();
    report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return report;
  }
  report.num_columns = sys.num_columns;
  report.num_rows = static_cast<int>(sys.rows.size());

  auto from_ip = [&](const IpSolution& ip) {
    report.nodes_explored = ip.nodes_explored;
    if (ip.status != IpStatus::kOptimal) {
      mark_infeasible(report, "no 0/1 schedule satisfies every constraint");
      return;
    }
    const std::vector<double> values(ip.values.begin(), ip.values.end());
    ExtractedSchedule ex = extract_schedule(inst, vars, sys, values);
    report.objective = ip.objective;
    fill_schedule(report, std::move(ex.flights));
  };

  switch (options.mode) {
    case SolveMode::kRelax: {
      const LpSolution lp = solve_lp(sys, options.solver.lp);
      report.lp_iterations = lp.iterations;
      if (lp.status != LpStatus::kOptimal) {
        mark_infeasible(report, std::string("linear relaxation is ") + to_string(lp.status));
        break;
      }
      report.lp_objective = lp.objective;
      const IntegralityReport integ = is_integral(lp, options.solver.integrality_tol);
      report.lp_integral = integ.integral;
      if (integ.integral) {
        ExtractedSchedule ex = extract_schedule(inst, vars, sys, lp.values);
        report.objective = lp.objective;
        fill_schedule(report, std::move(ex.flights));
      } else {
        from_ip(solve_ip(sys, options.solver));
      }
      break;
    }
    case SolveMode::kExact: {
      const IpSolution ip = solve_ip(sys, options.solver);
      report.lp_integral = ip.lp_was_integral;
      if (ip.status == IpStatus::kOptimal) report.lp_objective = ip.root_bound;
      from_ip(ip);
      break;
    }
    case SolveMode::kDecompose: {
      DecompositionOptions dopt;
      dopt.solver = options.solver;
      try {
        DecompositionTrace trace = iterative_solve(inst, dopt);
        report.objective = trace.decomposed_objective;
        fill_schedule(report, trace.final_schedule);
        report.trace = std::move(trace);
      } catch (const InfeasibleSubproblem& e) {
        mark_infeasible(report, e.what());
      }
      break;
    }
  }
  report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

ScenarioReport run_scenario(const std::filesystem::path& path, const ScenarioOptions& options) {
  const ValidatedInstance inst = validate_instance(parse_instance(path));
  return run_scenario(inst, options, path.string());
}

std::string render_report(const ScenarioReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::kTable:
      return render_table(report);
    case ReportFormat::kCsv:
      return render_csv(report);
    case ReportFormat::kJsonLines:
      break;
  }
  return render_json_lines(report);
}

}  // namespace tfmp
