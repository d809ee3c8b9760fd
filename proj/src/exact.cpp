// SPDX-License-Identifier: Apache-2.0

#include "tfmp/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace tfmp {

Rational to_rational(double v) {
  if (!std::isfinite(v)) throw std::domain_error("cannot convert non-finite value to rational");
  if (v == 0.0) return Rational(0);
  int exponent = 0;
  double mantissa = std::frexp(v, &exponent);
  // mantissa * 2^53 is an exact integer.
  auto m = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  boost::multiprecision::cpp_int num = m;
  boost::multiprecision::cpp_int den = 1;
  if (exponent >= 0) {
    num <<= exponent;
  } else {
    den <<= -exponent;
  }
  return Rational(num, den);
}

namespace {

// Smallest k <= 52 with v * 2^k integral, or -1.
int dyadic_scale(double v) {
  for (int k = 0; k <= 52; ++k) {
    double s = std::ldexp(v, k);
    if (s == std::floor(s)) return k;
  }
  return -1;
}

int sign_of(std::int64_t v) { return (v > 0) - (v < 0); }

}  // namespace

ExactSystem::ExactSystem(const ConstraintSystem& sys) : num_columns_(sys.num_columns) {
  rows_.reserve(sys.rows.size());
  for (const auto& row : sys.rows) {
    CompiledRow cr;
    cr.sense = row.sense;
    int scale = dyadic_scale(row.rhs);
    double magnitude = std::fabs(row.rhs);
    for (const auto& e : row.entries) {
      int k = dyadic_scale(e.coef);
      scale = (k < 0 || scale < 0) ? -1 : std::max(scale, k);
      magnitude += std::fabs(e.coef);
    }
    cr.integral = scale >= 0 && std::ldexp(magnitude, scale) < 0x1p60;
    if (cr.integral) {
      for (const auto& e : row.entries) {
        cr.int_entries.emplace_back(e.column, static_cast<std::int64_t>(std::ldexp(e.coef, scale)));
      }
      cr.int_rhs = static_cast<std::int64_t>(std::ldexp(row.rhs, scale));
    } else {
      for (const auto& e : row.entries) cr.rat_entries.emplace_back(e.column, to_rational(e.coef));
      cr.rat_rhs = to_rational(row.rhs);
    }
    rows_.push_back(std::move(cr));
  }
  for (int j = 0; j < num_columns_; ++j) {
    lower_.push_back(to_rational(sys.lower[j]));
    upper_.push_back(to_rational(sys.upper[j]));
    cost_.push_back(to_rational(sys.cost[j]));
  }
  offset_ = to_rational(sys.offset);
}

int ExactSystem::compare(std::size_t row, std::span<const int> x) const {
  const CompiledRow& cr = rows_[row];
  if (cr.integral) {
    std::int64_t sum = 0;
    for (const auto& [col, coef] : cr.int_entries) sum += coef * x[col];
    return sign_of(sum - cr.int_rhs);
  }
  Rational sum = 0;
  for (const auto& [col, coef] : cr.rat_entries) {
    if (x[col] != 0) sum += coef * x[col];
  }
  sum -= cr.rat_rhs;
  return sum.sign();
}

bool ExactSystem::satisfied(std::size_t row, std::span<const int> x) const {
  int c = compare(row, x);
  switch (rows_[row].sense) {
    case Sense::kLessEqual:
      return c <= 0;
    case Sense::kGreaterEqual:
      return c >= 0;
    case Sense::kEqual:
      break;
  }
  return c == 0;
}

bool ExactSystem::within_bounds(std::span<const int> x) const {
  for (int j = 0; j < num_columns_; ++j) {
    if (x[j] < lower_[j] || x[j] > upper_[j]) return false;
  }
  return true;
}

bool ExactSystem::feasible(std::span<const int> x) const {
  if (!within_bounds(x)) return false;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (!satisfied(r, x)) return false;
  }
  return true;
}

Rational ExactSystem::objective(std::span<const int> x) const {
  Rational sum = offset_;
  for (int j = 0; j < num_columns_; ++j) {
    if (x[j] != 0) sum += cost_[j] * x[j];
  }
  return sum;
}

}  // namespace tfmp
