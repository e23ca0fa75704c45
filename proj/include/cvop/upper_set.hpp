#pragma once

// Polyhedral convex upper sets  A = conv(points) + rec.
//
// The V-form (points + recession cone) is canonical. The H-form is a cached
// derivative, computed by double description in dimensions q <= 3 and on
// request up to the conversion ceiling.

#include "cvop/cone.hpp"

#include <optional>

namespace cvop {

/// {y : normal^T y >= offset}, with a unit normal.
struct Halfspace {
  Vec normal;
  double offset = 0.0;
};

class UpperSet {
 public:
  UpperSet() = default;

  /// conv(points) + rec. Dominated points are dropped: p is removed when it
  /// lies in conv(others) + rec. An empty point list is the empty set.
  static UpperSet make(const VecList& points, const PolyCone& rec);
  static UpperSet empty(int dim);
  /// Intersection of halfspaces converted to V-form (empty when infeasible).
  static UpperSet from_halfspaces(int dim, const std::vector<Halfspace>& hs);

  int dim() const { return dim_; }
  bool is_empty() const { return points_.empty(); }
  const VecList& points() const { return points_; }
  const PolyCone& rec() const { return rec_; }
  const std::optional<std::vector<Halfspace>>& halfspaces() const { return halfspaces_; }

  bool contains(const Vec& y, double tol = kTolSet) const;

 private:
  int dim_ = 0;
  VecList points_;
  PolyCone rec_;
  std::optional<std::vector<Halfspace>> halfspaces_;
};

/// H-form of a nonempty upper set, available up to q = 6.
std::vector<Halfspace> compute_halfspaces(const UpperSet& a);

struct DistanceReport {
  double value = 0.0;
  bool infinite = false;
  Vec witness_from;
  Vec witness_to;
  /// For infinite distances: a recession direction of one set that escapes the other.
  std::optional<Vec> direction;
};

PolyCone recession_cone(const UpperSet& a);

/// cl(A + B); the empty set absorbs.
UpperSet oplus(const UpperSet& a, const UpperSet& b);

/// cl(alpha·A + C) for alpha >= 0; 0 ⊙ A = {0} + C for nonempty A.
UpperSet odot(double alpha, const UpperSet& a, const PolyCone& order);

UpperSet intersect(const UpperSet& a, const UpperSet& b);

struct SelfBoundedness {
  bool self_bounded = false;
  std::optional<Vec> anchor;
};

/// Decides whether A ⊆ y + rec(A) for some y by LP feasibility over
/// {y : p - y in rec for all points p}.
SelfBoundedness is_self_bounded_set(const UpperSet& a);

DistanceReport point_set_distance(const Vec& y, const UpperSet& a);

/// Exact Hausdorff distance. Finite only when the recession cones coincide;
/// the supremum is then attained at V-form points.
DistanceReport hausdorff(const UpperSet& a, const UpperSet& b);

/// Lower bound on the Hausdorff distance from random samples of both sets
/// (points drawn from conv(points) + rec within `radius` along rays).
DistanceReport hausdorff_sampled_lower_bound(const UpperSet& a, const UpperSet& b, int samples,
                                             unsigned seed, double radius = 10.0);

/// Mutual containment of points and recession cones within tol.
bool set_equal(const UpperSet& a, const UpperSet& b, double tol = kTolSet);
/// a ⊆ b, tested on a's points and recession generators.
bool set_contains(const UpperSet& b, const UpperSet& a, double tol = kTolSet);

/// Greedy finite subset S of `samples` with conv(S) + K - eps·c ⊇ conv(samples) + K.
VecList finite_dominating_subset(const VecList& samples, const PolyCone& k, const Vec& c,
                                 double eps);

}  // namespace cvop
