// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <vector>

namespace tfmp {

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

enum class RowFamily { kDepCap, kArrCap, kSectorCap, kTransit, kTurn, kMonotone, kCustom };

const char* to_string(RowFamily family);

// Provenance of a row. `subject` is the sector (capacity rows) or flight id;
// `other` the next sector (transit), the incoming flight f' (turnaround) or
// the sector (monotone rows).
struct RowTag {
  RowFamily family = RowFamily::kCustom;
  std::string subject;
  std::string other;
  int time = 0;

  std::string label() const;
};

struct RowEntry {
  int column = 0;
  double coef = 0.0;
};

struct Row {
  std::vector<RowEntry> entries;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
  RowTag tag;
};

// A linear program in pure algebraic form: minimize cost.x + offset subject to
// the rows and lower <= x <= upper.
struct ConstraintSystem {
  int num_columns = 0;
  std::vector<Row> rows;
  std::vector<double> cost;
  double offset = 0.0;
  std::vector<double> lower;
  std::vector<double> upper;
  // Column lists, ordered by time, whose values are monotone non-decreasing in
  // every feasible point. Enumeration uses them to skip redundant bit
  // patterns.
  std::vector<std::vector<int>> monotone_chains;
  std::vector<std::string> column_names;

  // Empty system over `n` columns with bounds [0, 1] and zero cost.
  static ConstraintSystem binary(int n);

  Row& add_row(std::vector<RowEntry> entries, Sense sense, double rhs, RowTag tag = {});

  double activity(std::size_t row, std::span<const double> x) const;
  double objective_value(std::span<const double> x) const;
  int num_free_columns() const;
};

}  // namespace tfmp
