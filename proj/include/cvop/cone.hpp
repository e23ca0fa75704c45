#pragma once

// Polyhedral convex cones kept in both generator (V) and halfspace (H) form.
//
// Every stored vector is unit length; both lists are minimal and sorted
// lexicographically, so two constructions of the same cone compare equal
// element by element. A lineality direction l shows up as the pair ±l.

#include "cvop/types.hpp"

#include <optional>

namespace cvop {

class PolyCone {
 public:
  PolyCone() = default;

  static PolyCone from_generators(int dim, const VecList& generators);
  static PolyCone from_normals(int dim, const VecList& normals);
  static PolyCone orthant(int dim);
  static PolyCone zero(int dim);
  static PolyCone full(int dim);

  int dim() const { return dim_; }
  const VecList& generators() const { return generators_; }
  /// The cone is {y : n^T y >= 0 for every normal n}.
  const VecList& normals() const { return normals_; }

  bool is_zero() const { return generators_.empty(); }
  bool is_full() const { return normals_.empty(); }
  bool is_pointed() const { return pointed_; }
  bool is_solid() const { return solid_; }

  /// Membership of y (unit-normalized first) within tol.
  bool contains(const Vec& y, double tol = kTolCone) const;
  /// Every generator of `other` lies in this cone.
  bool contains_cone(const PolyCone& other, double tol = kTolCone) const;
  bool equals(const PolyCone& other, double tol = kTolCone) const;

  /// Some interior direction (normalized sum of generators); solid cones only.
  Vec interior_direction() const;

 private:
  PolyCone(int dim, VecList gens, VecList normals, bool pointed, bool solid);

  int dim_ = 0;
  VecList generators_;
  VecList normals_;
  bool pointed_ = true;
  bool solid_ = true;
};

/// K⁺ = {z : z^T y >= 0 for all y in K}.
PolyCone dual_cone(const PolyCone& k);

/// Minimal generating set of a pointed cone, unit length, lexicographic order.
/// Throws if the cone contains a line.
VecList extreme_directions(const PolyCone& k);

/// Cone membership (alias of PolyCone::contains).
bool contains(const PolyCone& k, const Vec& y, double tol = kTolCone);

/// Compact base {w in K : w^T c = 1} sampled at a finite set of points.
struct WeightBase {
  PolyCone cone;
  Vec c;
  VecList weights;
};

/// Extreme directions of K rescaled to w^T c = 1 plus a grid of interior
/// weights. `points_per_edge` >= 2 is the number of samples along each edge
/// of the base (q = 2: along the single segment; q = 3: barycentric grid).
WeightBase weight_base(const PolyCone& k, const Vec& c, int points_per_edge);

/// Largest angle (radians) between a unit vector u and its nearest element of vs.
double angular_distance(const Vec& u, const VecList& vs);

/// Symmetric angular mismatch between two generator sets.
double angular_mismatch(const VecList& a, const VecList& b);

/// Angle (radians) between u and the cone; 0 inside, pi/2 or more when u is polar to it.
double angle_to_cone(const Vec& u, const PolyCone& k);

/// Angular Hausdorff distance: the largest angle from a generator of either
/// cone to the other cone. Unlike angular_mismatch it ignores extra
/// generators that lie close to the other cone's faces.
double cone_angular_distance(const PolyCone& a, const PolyCone& b);

}  // namespace cvop
