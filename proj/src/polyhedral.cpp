// SPDX-License-Identifier: Apache-2.0

#include "tfmp/polyhedral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "tfmp/errors.hpp"
#include "tfmp/seed.hpp"
#include "tfmp/simplex.hpp"

namespace tfmp {

namespace {

// Candidate assignments of one column group.
struct Group {
  std::vector<int> columns;
  std::vector<std::vector<int>> choices;
};

bool within(const ConstraintSystem& sys, int col, int v) {
  return sys.lower[col] <= v && v <= sys.upper[col];
}

class Enumerator {
 public:
  Enumerator(const ConstraintSystem& sys, int cap) : sys_(sys), exact_(sys) {
    const int n = sys.num_columns;
    const int free = sys.num_free_columns();
    if (free > cap) {
      throw CapExceeded("system has " + std::to_string(free) + " free columns, cap is " +
                        std::to_string(cap));
    }
    point_.assign(n, 0);
    std::vector<int> group_of(n, -1);
    for (const auto& chain : sys.monotone_chains) {
      Group g;
      g.columns = chain;
      const int k = static_cast<int>(chain.size());
      for (int first_one = 0; first_one <= k; ++first_one) {
        std::vector<int> values(k);
        bool ok = true;
        for (int p = 0; p < k; ++p) {
          values[p] = p >= first_one ? 1 : 0;
          ok = ok && within(sys, chain[p], values[p]);
        }
        if (ok) g.choices.push_back(std::move(values));
      }
      for (int c : chain) group_of[c] = static_cast<int>(groups_.size());
      groups_.push_back(std::move(g));
    }
    for (int c = 0; c < n; ++c) {
      if (group_of[c] >= 0) continue;
      Group g;
      g.columns = {c};
      for (int v : {0, 1}) {
        if (within(sys, c, v)) g.choices.push_back({v});
      }
      group_of[c] = static_cast<int>(groups_.size());
      groups_.push_back(std::move(g));
    }
    rows_at_.resize(groups_.size());
    for (std::size_t r = 0; r < sys.rows.size(); ++r) {
      int last = -1;
      for (const auto& e : sys.rows[r].entries) last = std::max(last, group_of[e.column]);
      if (last >= 0) rows_at_[last].push_back(r);
      else constant_rows_.push_back(r);
    }
  }

  PointSet run() {
    PointSet out;
    out.dimension = sys_.num_columns;
    for (std::size_t r : constant_rows_) {
      if (!exact_.satisfied(r, point_)) return out;
    }
    descend(0, out);
    return out;
  }

 private:
  void descend(std::size_t g, PointSet& out) {
    if (g == groups_.size()) {
      out.points.push_back(point_);
      return;
    }
    const Group& group = groups_[g];
    for (const auto& choice : group.choices) {
      for (std::size_t p = 0; p < group.columns.size(); ++p) point_[group.columns[p]] = choice[p];
      bool ok = true;
      for (std::size_t r : rows_at_[g]) {
        if (!exact_.satisfied(r, point_)) {
          ok = false;
          break;
        }
      }
      if (ok) descend(g + 1, out);
    }
    for (int c : group.columns) point_[c] = 0;
  }

  const ConstraintSystem& sys_;
  ExactSystem exact_;
  std::vector<Group> groups_;
  std::vector<std::vector<std::size_t>> rows_at_;
  std::vector<std::size_t> constant_rows_;
  std::vector<int> point_;
};

double rational_to_double(const Rational& r) { return r.convert_to<double>(); }

TheoremTrial run_trial(const ConstraintSystem& sys, const PointSet& points,
                       const std::vector<double>& cost, double offset) {
  constexpr double kTol = 1e-7;
  TheoremTrial trial;

  std::vector<Rational> exact_cost;
  for (double c : cost) exact_cost.push_back(to_rational(c));
  std::vector<double> point_values;
  Rational best;
  for (std::size_t i = 0; i < points.points.size(); ++i) {
    Rational v = to_rational(offset);
    for (int j = 0; j < sys.num_columns; ++j) {
      if (points.points[i][j] != 0) v += exact_cost[j];
    }
    if (i == 0 || v < best) best = v;
    point_values.push_back(rational_to_double(v));
  }
  trial.enumeration_opt = rational_to_double(best);

  // min sum_i lambda_i (c.p_i) subject to sum_i lambda_i = 1, lambda >= 0.
  ConstraintSystem hull = ConstraintSystem::binary(static_cast<int>(points.points.size()));
  hull.cost = point_values;
  std::vector<RowEntry> convexity;
  for (int i = 0; i < hull.num_columns; ++i) convexity.push_back({i, 1.0});
  hull.add_row(std::move(convexity), Sense::kEqual, 1.0);
  const LpSolution hull_lp = solve_lp(hull);
  trial.hull_opt = hull_lp.objective;
  trial.hull_agrees = hull_lp.status == LpStatus::kOptimal &&
                      std::fabs(hull_lp.objective - trial.enumeration_opt) <= kTol;

  ConstraintSystem relaxed = sys;
  relaxed.cost = cost;
  relaxed.offset = offset;
  const LpSolution lp = solve_lp(relaxed);
  trial.relaxation_opt = lp.objective;
  trial.relaxation_matches = std::fabs(lp.objective - trial.enumeration_opt) <= kTol;
  return trial;
}

void tally(TheoremReport& report, const TheoremTrial& t) {
  ++report.trials;
  if (t.hull_agrees) {
    ++report.hull_agreements;
  } else {
    ++report.hull_disagreements;
  }
  if (t.relaxation_matches) {
    ++report.match;
  } else if (t.relaxation_opt < t.enumeration_opt) {
    ++report.relaxation_strictly_below;
  } else {
    ++report.relaxation_above;
  }
}

}  // namespace

PointSet enumerate_feasible(const ConstraintSystem& sys, int cap) {
  return Enumerator(sys, cap).run();
}

bool AffineSpan::add(std::span<const int> p) {
  if (!has_origin_) {
    origin_.assign(p.begin(), p.end());
    has_origin_ = true;
    return true;
  }
  if (static_cast<int>(basis_.size()) == dimension_) return false;
  std::vector<Rational> v(dimension_);
  for (int j = 0; j < dimension_; ++j) v[j] = p[j] - origin_[j];
  for (std::size_t b = 0; b < basis_.size(); ++b) {
    const Rational f = v[pivots_[b]];
    if (f == 0) continue;
    for (int j = 0; j < dimension_; ++j) {
      if (basis_[b][j] != 0) v[j] -= f * basis_[b][j];
    }
  }
  int pivot = -1;
  for (int j = 0; j < dimension_; ++j) {
    if (v[j] != 0) {
      pivot = j;
      break;
    }
  }
  if (pivot < 0) return false;
  const Rational inv = 1 / v[pivot];
  for (auto& x : v) x *= inv;
  basis_.push_back(std::move(v));
  pivots_.push_back(pivot);
  return true;
}

int affine_dimension(std::span<const ZeroOnePoint> points) {
  if (points.empty()) return -1;
  AffineSpan span(static_cast<int>(points.front().size()));
  for (const auto& p : points) span.add(p);
  return span.dim();
}

std::vector<FaceReport> classify_faces(const ConstraintSystem& sys, const PointSet& points) {
  const ExactSystem exact(sys);
  for (std::size_t r = 0; r < sys.rows.size(); ++r) {
    for (const auto& p : points.points) {
      if (!exact.satisfied(r, p)) {
        throw InvalidInequality("row " + sys.rows[r].tag.label() +
                                " is violated by a feasible 0/1 point");
      }
    }
  }
  const int polytope_dim = affine_dimension(points.points);

  std::vector<FaceReport> reports;
  for (std::size_t r = 0; r < sys.rows.size(); ++r) {
    FaceReport rep;
    rep.row = r;
    rep.row_tag = sys.rows[r].tag;
    rep.polytope_dim = polytope_dim;
    AffineSpan span(sys.num_columns);
    for (std::size_t i = 0; i < points.points.size(); ++i) {
      if (!exact.tight(r, points.points[i])) continue;
      rep.tight_points.push_back(i);
      if (span.add(points.points[i])) rep.witnesses.push_back(i);
    }
    rep.face_dim = span.dim();
    rep.is_facet = rep.face_dim == polytope_dim - 1;
    reports.push_back(std::move(rep));
  }
  return reports;
}

TheoremReport verify_main_theorem(const ConstraintSystem& sys, const PointSet& points, int trials,
                                  std::uint64_t seed) {
  if (points.points.empty()) {
    throw std::invalid_argument("verify_main_theorem needs a non-empty point set");
  }
  TheoremReport report;
  const TheoremTrial own = run_trial(sys, points, sys.cost, sys.offset);
  report.system_objective = own;

  for (int k = 0; k < trials; ++k) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    std::uniform_int_distribution<int> coef(-10, 10);
    std::vector<double> cost(sys.num_columns);
    for (auto& c : cost) c = coef(rng);
    tally(report, run_trial(sys, points, cost, 0.0));
  }
  return report;
}

}  // namespace tfmp
