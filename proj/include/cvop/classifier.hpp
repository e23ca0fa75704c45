#pragma once

// Probing the cone W of weights with bounded scalarizations, estimating
// cl W and recc 𝒫 = (cl W)⁺, and deciding (self-)boundedness.

#include "cvop/scalar.hpp"

#include <optional>

namespace cvop {

struct WEstimate {
  VecList bounded_dirs;
  VecList divergent_dirs;
  VecList undetermined_dirs;  // MAXITER
  PolyCone cone_hull;         // cone(bounded_dirs), inner estimate of cl W
  double resolution_deg = 1.0;
  /// Every grid direction with its verdict, in grid order.
  VecList grid;
  std::vector<ScalarVerdict> verdicts;
};

/// Grid over the unit sphere ∩ C⁺. q = 2: every multiple of the resolution
/// (in polar angle) inside the arc plus both ends, so halving the resolution
/// refines the grid. q = 3: barycentric grid on the base {w^T c = 1}.
VecList weight_grid(const PolyCone& dual, const Vec& c, double resolution_deg);

WEstimate estimate_W(const CvopProblem& prob, double resolution_deg,
                     const BarrierOptions& opt = {});

/// dual_cone(cone_hull). Throws when no direction was bounded.
PolyCone estimate_recc_P(const WEstimate& est);

enum class Verdict { Bounded, SelfBoundedUnbounded, NotSelfBounded, Undetermined };
const char* to_string(Verdict v);

struct Evidence {
  std::string role;  // extreme | grid | bisect | limit | anchor
  ScalarVerdict verdict;
};

/// A ray of the boundary of cl Ŵ located by bisection between a bounded and a
/// divergent grid neighbour.
struct BoundaryRay {
  Vec direction;          // bounded side of the final bracket
  ScalarStatus status;    // what the limit ray itself looks like
  double bracket_rad = 0.0;
  std::string how;        // grid | divergent_end | bounded_end | limit
  std::vector<double> limit_values;  // γ approaching the limit (limit test)
};

struct Anchor {
  Vec point;
  VecList weights;
  std::vector<double> gamma;
};

struct BoundednessReport {
  Verdict verdict = Verdict::Undetermined;
  PolyCone recc_estimate;
  PolyCone w_closure;  // cl Ŵ
  std::optional<Vec> anchor;
  std::optional<Anchor> anchor_detail;
  std::vector<Evidence> evidence;
  std::vector<BoundaryRay> boundary;
  std::optional<WEstimate> w_estimate;
  double resolution_deg = 1.0;
  std::string note;
};

struct ClassifyOptions {
  double resolution_deg = 1.0;
  double bisect_tol_rad = 1e-5;  // the divergence test resolves W to ~1e-6 rad
  int anchor_points = 9;
  BarrierOptions barrier;
};

BoundednessReport classify(const CvopProblem& prob, const ClassifyOptions& opt = {});

/// ȳ with w^T ȳ <= γ^w for every base weight, maximizing (Σw)^T ȳ.
/// Throws (Numerical) when a base weight is not bounded or the LP is infeasible.
Anchor anchor_point(const CvopProblem& prob, const WeightBase& base,
                    const BarrierOptions& opt = {});

/// Unit vector at angle `angle` from a towards b along the great circle.
Vec rotate_towards(const Vec& a, const Vec& b, double angle);
double angle_between(const Vec& a, const Vec& b);

}  // namespace cvop
