// Independent reference computations used only by tests. Nothing here calls
// into the solver code paths it is meant to check.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfmp/constraint_system.hpp"
#include "tfmp/instance.hpp"

namespace oracle {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline long long as_integer(double v) {
  const double r = std::round(v);
  if (r != v || std::fabs(r) > 1e15) throw std::invalid_argument("oracle needs integer data");
  return static_cast<long long>(r);
}

// Smallest power of two that makes every number of the row an integer.
inline double row_scale(const tfmp::Row& row) {
  for (double scale = 1.0; scale <= 1048576.0; scale *= 2.0) {
    bool ok = std::round(row.rhs * scale) == row.rhs * scale;
    for (const auto& e : row.entries) ok = ok && std::round(e.coef * scale) == e.coef * scale;
    if (ok) return scale;
  }
  throw std::invalid_argument("row is not dyadic");
}

struct BruteForceResult {
  long long feasible_points = 0;
  std::optional<long long> optimum;  // includes the offset
};

// Walks every 0/1 assignment of the free columns in Gray-code order,
// updating row activities incrementally. Rows are scaled to integers;
// costs and offset must be integers.
inline BruteForceResult brute_force(const tfmp::ConstraintSystem& sys) {
  const int n = sys.num_columns;
  std::vector<int> free_cols;
  std::vector<int> x(n, 0);
  for (int c = 0; c < n; ++c) {
    if (sys.lower[c] == sys.upper[c]) {
      x[c] = static_cast<int>(sys.lower[c]);
    } else {
      free_cols.push_back(c);
    }
  }
  if (free_cols.size() > 26) throw std::invalid_argument("too many free columns for brute force");

  const std::size_t m = sys.rows.size();
  std::vector<long long> activity(m, 0), rhs(m);
  std::vector<std::vector<std::pair<std::size_t, long long>>> col_rows(n);
  for (std::size_t r = 0; r < m; ++r) {
    const double scale = row_scale(sys.rows[r]);
    rhs[r] = as_integer(sys.rows[r].rhs * scale);
    for (const auto& e : sys.rows[r].entries) {
      const long long a = as_integer(e.coef * scale);
      col_rows[e.column].push_back({r, a});
      activity[r] += a * x[e.column];
    }
  }
  auto ok = [&](std::size_t r) {
    switch (sys.rows[r].sense) {
      case tfmp::Sense::kLessEqual:
        return activity[r] <= rhs[r];
      case tfmp::Sense::kGreaterEqual:
        return activity[r] >= rhs[r];
      case tfmp::Sense::kEqual:
        break;
    }
    return activity[r] == rhs[r];
  };
  long long violated = 0;
  for (std::size_t r = 0; r < m; ++r) violated += ok(r) ? 0 : 1;
  long long value = as_integer(sys.offset);
  for (int c = 0; c < n; ++c) value += as_integer(sys.cost[c]) * x[c];

  BruteForceResult out;
  auto visit = [&] {
    if (violated != 0) return;
    ++out.feasible_points;
    if (!out.optimum || value < *out.optimum) out.optimum = value;
  };
  visit();
  const std::uint64_t total = std::uint64_t{1} << free_cols.size();
  for (std::uint64_t k = 1; k < total; ++k) {
    const int bit = __builtin_ctzll(k);
    const int c = free_cols[bit];
    const int delta = x[c] == 0 ? 1 : -1;
    x[c] += delta;
    value += delta * as_integer(sys.cost[c]);
    for (auto [r, a] : col_rows[c]) {
      const bool before = ok(r);
      activity[r] += delta * a;
      const bool after = ok(r);
      violated += (before ? 0 : -1) + (after ? 0 : 1);
    }
    visit();
  }
  return out;
}

// All 0/1 points, in lexicographic order of the column vector. For small
// systems only.
inline std::vector<std::vector<int>> all_points(const tfmp::ConstraintSystem& sys) {
  const int n = sys.num_columns;
  if (n > 22) throw std::invalid_argument("too many columns");
  // Rows scaled to integers once; the test itself is exact.
  struct IntRow {
    std::vector<std::pair<int, long long>> terms;
    tfmp::Sense sense;
    long long rhs;
  };
  std::vector<IntRow> rows;
  for (const auto& row : sys.rows) {
    const double scale = row_scale(row);
    IntRow r{{}, row.sense, as_integer(row.rhs * scale)};
    for (const auto& e : row.entries) r.terms.emplace_back(e.column, as_integer(e.coef * scale));
    rows.push_back(std::move(r));
  }
  std::vector<std::vector<int>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<int> x(n);
    bool ok = true;
    for (int c = 0; c < n; ++c) {
      // Column 0 is the most significant bit so the output is lexicographic.
      x[c] = static_cast<int>((mask >> (n - 1 - c)) & 1U);
      ok = ok && sys.lower[c] <= x[c] && x[c] <= sys.upper[c];
    }
    for (std::size_t r = 0; ok && r < rows.size(); ++r) {
      long long lhs = 0;
      for (const auto& [c, a] : rows[r].terms) lhs += a * x[c];
      switch (rows[r].sense) {
        case tfmp::Sense::kLessEqual:
          ok = lhs <= rows[r].rhs;
          break;
        case tfmp::Sense::kGreaterEqual:
          ok = lhs >= rows[r].rhs;
          break;
        case tfmp::Sense::kEqual:
          ok = lhs == rows[r].rhs;
          break;
      }
    }
    if (ok) out.push_back(std::move(x));
  }
  return out;
}

// Rank of an integer matrix by fraction-free Bareiss elimination.
inline int bareiss_rank(std::vector<std::vector<BigInt>> a) {
  const std::size_t rows = a.size();
  if (rows == 0) return 0;
  const std::size_t cols = a[0].size();
  BigInt prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
      }
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return static_cast<int>(rank);
}

// Affine rank of integer points: rank of the differences to the first one.
inline int affine_rank(const std::vector<std::vector<int>>& points) {
  if (points.empty()) return -1;
  std::vector<std::vector<BigInt>> diff;
  for (std::size_t i = 1; i < points.size(); ++i) {
    std::vector<BigInt> row;
    for (std::size_t j = 0; j < points[i].size(); ++j) row.emplace_back(points[i][j] - points[0][j]);
    diff.push_back(std::move(row));
  }
  return bareiss_rank(std::move(diff));
}

struct LpOracleResult {
  bool feasible = false;
  BigRational optimum;
};

// LP optimum over a bounded polytope by enumerating every basic solution:
// each choice of n linearly independent tight constraints (rows or bounds)
// is solved exactly and kept when feasible. Exponential; n <= 6 or so.
inline LpOracleResult vertex_enumeration_lp(const tfmp::ConstraintSystem& sys) {
  const int n = sys.num_columns;
  struct Hyper {
    std::vector<BigRational> a;
    BigRational b;
  };
  std::vector<Hyper> planes;
  std::vector<std::pair<std::vector<BigRational>, std::pair<tfmp::Sense, BigRational>>> cons;
  for (const auto& row : sys.rows) {
    std::vector<BigRational> a(n, 0);
    for (const auto& e : row.entries) a[e.column] += BigRational(e.coef);
    planes.push_back({a, BigRational(row.rhs)});
    cons.push_back({a, {row.sense, BigRational(row.rhs)}});
  }
  for (int c = 0; c < n; ++c) {
    std::vector<BigRational> a(n, 0);
    a[c] = 1;
    planes.push_back({a, BigRational(sys.lower[c])});
    planes.push_back({a, BigRational(sys.upper[c])});
  }
  auto feasible = [&](const std::vector<BigRational>& x) {
    for (int c = 0; c < n; ++c) {
      if (x[c] < BigRational(sys.lower[c]) || x[c] > BigRational(sys.upper[c])) return false;
    }
    for (const auto& [a, sb] : cons) {
      BigRational lhs = 0;
      for (int c = 0; c < n; ++c) lhs += a[c] * x[c];
      if (sb.first == tfmp::Sense::kLessEqual && lhs > sb.second) return false;
      if (sb.first == tfmp::Sense::kGreaterEqual && lhs < sb.second) return false;
      if (sb.first == tfmp::Sense::kEqual && lhs != sb.second) return false;
    }
    return true;
  };

  LpOracleResult out;
  const int total = static_cast<int>(planes.size());
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  if (n == 0) {
    out.feasible = feasible({});
    out.optimum = BigRational(sys.offset);
    return out;
  }
  while (true) {
    // Solve the square system by Gauss-Jordan.
    std::vector<std::vector<BigRational>> m(n, std::vector<BigRational>(n + 1));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m[i][j] = planes[idx[i]].a[j];
      m[i][n] = planes[idx[i]].b;
    }
    bool singular = false;
    for (int c = 0; c < n && !singular; ++c) {
      int p = c;
      while (p < n && m[p][c] == 0) ++p;
      if (p == n) {
        singular = true;
        break;
      }
      std::swap(m[p], m[c]);
      for (int r = 0; r < n; ++r) {
        if (r == c || m[r][c] == 0) continue;
        const BigRational f = m[r][c] / m[c][c];
        for (int k = c; k <= n; ++k) m[r][k] -= f * m[c][k];
      }
    }
    if (!singular) {
      std::vector<BigRational> x(n);
      for (int i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
      if (feasible(x)) {
        BigRational v(sys.offset);
        for (int c = 0; c < n; ++c) v += BigRational(sys.cost[c]) * x[c];
        if (!out.feasible || v < out.optimum) out.optimum = v;
        out.feasible = true;
      }
    }
    // Next combination.
    int i = n - 1;
    while (i >= 0 && idx[i] == total - n + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

// Free-column count from the windows alone: one column per window time
// except the last.
inline int free_column_tally(const tfmp::Instance& inst) {
  int total = 0;
  for (const auto& f : inst.flights) {
    for (const auto& w : f.windows) total += w->last - w->first;
  }
  return total;
}

// Expected number of emitted rows per family, worked out from the instance
// shape: a row survives when at least one of its arrive-by terms is a free
// time inside a window, i.e. in [first, last - 1].
inline std::map<tfmp::RowFamily, int> row_tally(const tfmp::Instance& inst) {
  using tfmp::RowFamily;
  std::map<RowFamily, int> out;
  auto is_free = [&](const tfmp::Flight& f, std::size_t pos, int t) {
    const auto& w = *f.windows[pos];
    return w.first <= t && t < w.last;
  };
  const int T = inst.horizon;
  for (const auto& k : inst.sectors) {
    for (int t = 1; t <= T; ++t) {
      bool dep = false, arr = false, occ = false;
      bool dep_users = false, arr_users = false, occ_users = false;
      for (const auto& f : inst.flights) {
        const std::size_t last = f.path.size() - 1;
        if (f.path.front() == k) {
          dep_users = true;
          dep = dep || is_free(f, 0, t) || is_free(f, 0, t - 1);
        }
        if (f.path.back() == k) {
          arr_users = true;
          arr = arr || is_free(f, last, t) || is_free(f, last, t - 1);
        }
        for (std::size_t i = 0; i < last; ++i) {
          if (f.path[i] != k) continue;
          occ_users = true;
          occ = occ || is_free(f, i, t) || is_free(f, i + 1, t);
        }
      }
      using RK = tfmp::ResourceKind;
      if (dep_users && dep && inst.capacities.get(k, RK::kDeparture, t) != tfmp::kUnbounded) {
        ++out[RowFamily::kDepCap];
      }
      if (arr_users && arr && inst.capacities.get(k, RK::kArrival, t) != tfmp::kUnbounded) {
        ++out[RowFamily::kArrCap];
      }
      if (occ_users && occ && inst.capacities.get(k, RK::kSector, t) != tfmp::kUnbounded) {
        ++out[RowFamily::kSectorCap];
      }
    }
  }
  for (const auto& f : inst.flights) {
    for (std::size_t i = 0; i + 1 < f.path.size(); ++i) {
      const auto& w = *f.windows[i];
      for (int t = w.first - 1; t <= w.last; ++t) {
        if (is_free(f, i + 1, t + f.transit_times[i]) || is_free(f, i, t)) ++out[RowFamily::kTransit];
      }
    }
    for (std::size_t i = 0; i < f.path.size(); ++i) {
      out[RowFamily::kMonotone] += f.windows[i]->last - f.windows[i]->first;
    }
  }
  for (const auto& c : inst.continuations) {
    const auto& fin = inst.flights[*inst.flight_index(c.incoming)];
    const auto& fout = inst.flights[*inst.flight_index(c.outgoing)];
    const auto& w = *fout.windows[0];
    for (int t = w.first; t <= w.last; ++t) {
      if (is_free(fout, 0, t) || is_free(fin, fin.path.size() - 1, t - fin.turnaround)) {
        ++out[RowFamily::kTurn];
      }
    }
  }
  return out;
}

}  // namespace oracle
