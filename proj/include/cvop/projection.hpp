#pragma once

#include "cvop/types.hpp"

namespace cvop {

/// Euclidean projection of y onto conv(points) + cone(rays).
struct Projection {
  Vec point;          // nearest point of the set
  Vec point_weights;  // barycentric weights, sum to one
  Vec ray_weights;    // nonnegative ray coefficients
  double distance = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Active-set scheme on  min ½‖Gz − y‖²,  z ≥ 0,  Σ_{points} z = 1.
/// The iteration cap is 10·(#points + #rays); `points` must be nonempty.
Projection project_onto_polyhedron(const Vec& y, const VecList& points, const VecList& rays);

/// Projection onto cone(rays) (no point part; the apex is the origin).
Projection project_onto_cone(const Vec& y, const VecList& rays);

}  // namespace cvop
