// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tfmp/constraint_system.hpp"

namespace tfmp {

using Rational = boost::multiprecision::cpp_rational;

// Exact value of a finite double (every double is a dyadic rational).
Rational to_rational(double v);

// Rows, bounds and objective of a ConstraintSystem compiled for exact
// evaluation at integer points. Rows whose coefficients become integers after
// scaling by a power of two are evaluated in 64-bit arithmetic; the rest fall
// back to rationals.
class ExactSystem {
 public:
  explicit ExactSystem(const ConstraintSystem& sys);

  std::size_t num_rows() const { return rows_.size(); }
  int num_columns() const { return num_columns_; }

  // Sign of (a.x - b) for `row`.
  int compare(std::size_t row, std::span<const int> x) const;
  bool satisfied(std::size_t row, std::span<const int> x) const;
  bool tight(std::size_t row, std::span<const int> x) const { return compare(row, x) == 0; }
  bool within_bounds(std::span<const int> x) const;
  // All rows and all bounds hold.
  bool feasible(std::span<const int> x) const;
  Rational objective(std::span<const int> x) const;

 private:
  struct CompiledRow {
    Sense sense = Sense::kLessEqual;
    bool integral = false;
    std::vector<std::pair<int, std::int64_t>> int_entries;
    std::int64_t int_rhs = 0;
    std::vector<std::pair<int, Rational>> rat_entries;
    Rational rat_rhs;
  };

  int num_columns_ = 0;
  std::vector<CompiledRow> rows_;
  std::vector<Rational> lower_;
  std::vector<Rational> upper_;
  std::vector<Rational> cost_;
  Rational offset_;
};

}  // namespace tfmp
