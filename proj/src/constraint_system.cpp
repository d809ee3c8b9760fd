// SPDX-License-Identifier: Apache-2.0

#include "tfmp/constraint_system.hpp"

namespace tfmp {

const char* to_string(RowFamily family) {
  switch (family) {
    case RowFamily::kDepCap:
      return "DepCap";
    case RowFamily::kArrCap:
      return "ArrCap";
    case RowFamily::kSectorCap:
      return "SectorCap";
    case RowFamily::kTransit:
      return "Transit";
    case RowFamily::kTurn:
      return "Turn";
    case RowFamily::kMonotone:
      return "Monotone";
    case RowFamily::kCustom:
      break;
  }
  return "Row";
}

std::string RowTag::label() const {
  std::string out = to_string(family);
  if (!subject.empty()) out += " " + subject;
  if (!other.empty()) out += " " + other;
  if (family != RowFamily::kCustom || time != 0) out += " t=" + std::to_string(time);
  return out;
}

ConstraintSystem ConstraintSystem::binary(int n) {
  ConstraintSystem sys;
  sys.num_columns = n;
  sys.cost.assign(n, 0.0);
  sys.lower.assign(n, 0.0);
  sys.upper.assign(n, 1.0);
  for (int j = 0; j < n; ++j) sys.column_names.push_back("x" + std::to_string(j));
  return sys;
}

Row& ConstraintSystem::add_row(std::vector<RowEntry> entries, Sense sense, double rhs, RowTag tag) {
  rows.push_back(Row{std::move(entries), sense, rhs, std::move(tag)});
  return rows.back();
}

double ConstraintSystem::activity(std::size_t row, std::span<const double> x) const {
  double sum = 0.0;
  for (const auto& e : rows[row].entries) sum += e.coef * x[e.column];
  return sum;
}

double ConstraintSystem::objective_value(std::span<const double> x) const {
  double sum = offset;
  for (int j = 0; j < num_columns; ++j) sum += cost[j] * x[j];
  return sum;
}

int ConstraintSystem::num_free_columns() const {
  int n = 0;
  for (int j = 0; j < num_columns; ++j) n += lower[j] < upper[j] ? 1 : 0;
  return n;
}

}  // namespace tfmp
