// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tfmp/constraint_system.hpp"
#include "tfmp/exact.hpp"

namespace tfmp {

using ZeroOnePoint = std::vector<int>;

// The feasible 0/1 set S of a system.
struct PointSet {
  int dimension = 0;
  std::vector<ZeroOnePoint> points;
};

inline constexpr int kDefaultEnumerationCap = 24;

// Enumerates S exactly. Columns in a monotone chain are assigned together by
// the position of their first 1, so a chain of k columns contributes k + 1
// candidates instead of 2^k. Rows are checked (exactly) as soon as all their
// columns are assigned. Throws CapExceeded when more than `cap` columns are
// free.
PointSet enumerate_feasible(const ConstraintSystem& sys, int cap = kDefaultEnumerationCap);

// Incrementally grown affine hull of integer points, in exact arithmetic.
class AffineSpan {
 public:
  explicit AffineSpan(int dimension) : dimension_(dimension) {}

  // Returns true when `p` is affinely independent of the points added so far.
  bool add(std::span<const int> p);
  // -1 before the first point.
  int dim() const { return has_origin_ ? static_cast<int>(basis_.size()) : -1; }

 private:
  int dimension_;
  bool has_origin_ = false;
  std::vector<int> origin_;
  std::vector<std::vector<Rational>> basis_;  // echelon rows, pivot entry 1
  std::vector<int> pivots_;
};

// Dimension of the affine hull: -1 for no points, 0 for one point.
int affine_dimension(std::span<const ZeroOnePoint> points);

struct FaceReport {
  std::size_t row = 0;
  RowTag row_tag;
  std::vector<std::size_t> tight_points;  // indices into the point set
  int face_dim = -1;
  int polytope_dim = -1;
  bool is_facet = false;
  // face_dim + 1 affinely independent tight points (indices).
  std::vector<std::size_t> witnesses;
};

// One report per row of `sys`. Every row must be valid for the points;
// a violated row throws InvalidInequality.
std::vector<FaceReport> classify_faces(const ConstraintSystem& sys, const PointSet& points);

struct TheoremTrial {
  double enumeration_opt = 0.0;  // min over S
  double hull_opt = 0.0;         // LP over conv(S) in convex-combination form
  double relaxation_opt = 0.0;   // LP relaxation of the system
  bool hull_agrees = false;
  bool relaxation_matches = false;
};

struct TheoremReport {
  int trials = 0;
  int hull_agreements = 0;
  int hull_disagreements = 0;
  int match = 0;
  int relaxation_strictly_below = 0;
  // Should stay 0: the relaxation contains S.
  int relaxation_above = 0;
  // Outcome for the system's own cost vector.
  std::optional<TheoremTrial> system_objective;
};

// For `trials` random integer cost vectors (seeded per trial from `seed`),
// compares the minimum over S, the LP over conv(S) and the LP relaxation.
// The system's own objective is checked too.
TheoremReport verify_main_theorem(const ConstraintSystem& sys, const PointSet& points, int trials,
                                  std::uint64_t seed);

}  // namespace tfmp
