#pragma once

// Convex vector optimization problems:
//   minimize f(x) w.r.t. C  subject to  g(x) <=_D 0,  lower <= x <= upper.

#include "cvop/cone.hpp"

#include <functional>
#include <memory>
#include <string>

namespace cvop {

/// A smooth map R^n -> R^k with Jacobian and weighted Hessian sum_i l_i ∇²F_i.
/// `value` may return non-finite entries outside the natural domain.
class VectorFunction {
 public:
  using ValueFn = std::function<Vec(const Vec&)>;
  using JacobianFn = std::function<Mat(const Vec&)>;
  using HessianFn = std::function<Mat(const Vec&, const Vec&)>;

  VectorFunction(int in_dim, int out_dim, ValueFn value, JacobianFn jacobian, HessianFn hessian,
                 bool affine = false);

  /// F(x) = A x + b.
  static VectorFunction affine(const Mat& a, const Vec& b);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  bool is_affine() const { return affine_; }

  Vec value(const Vec& x) const { return value_(x); }
  Mat jacobian(const Vec& x) const { return jacobian_(x); }
  Mat weighted_hessian(const Vec& x, const Vec& lambda) const { return hessian_(x, lambda); }

 private:
  int in_dim_;
  int out_dim_;
  ValueFn value_;
  JacobianFn jacobian_;
  HessianFn hessian_;
  bool affine_;
};

struct ConvexityReport {
  int trials = 0;
  int evaluated = 0;
  double max_violation_f = 0.0;
  double max_violation_g = 0.0;
  Vec worst_x;
  Vec worst_y;
};

struct GradientReport {
  double max_rel_error = 0.0;
  int worst_component = -1;
  int worst_coordinate = -1;
  Vec worst_point;
};

struct ProblemData {
  std::string name;
  std::shared_ptr<const VectorFunction> f;
  std::shared_ptr<const VectorFunction> g;  // may be null (m = 0)
  PolyCone C;
  PolyCone D;  // ignored when g is null
  Vec lower;   // -inf allowed
  Vec upper;   // +inf allowed
  Vec x0;      // strictly feasible start
  Vec c;       // interior direction of C; empty selects the default
  Vec sample_lower;  // finite box used for random sampling
  Vec sample_upper;
};

/// Immutable, shareable problem. The constructor validates cones, dimensions,
/// strict feasibility of x0 and c ∈ int C; convexity is only diagnosed.
class CvopProblem {
 public:
  explicit CvopProblem(ProblemData data);

  const std::string& name() const { return d_.name; }
  int n() const { return d_.f->in_dim(); }
  int q() const { return d_.f->out_dim(); }
  int m() const { return d_.g ? d_.g->out_dim() : 0; }

  const VectorFunction& f() const { return *d_.f; }
  const VectorFunction* g() const { return d_.g.get(); }
  const PolyCone& C() const { return d_.C; }
  const PolyCone& D() const { return d_.D; }
  const PolyCone& C_dual() const { return c_dual_; }
  /// Rows n^T with g(x) <=_D 0  <=>  n^T g(x) <= 0 for every row.
  const Mat& constraint_rows() const { return d_rows_; }
  const Vec& lower() const { return d_.lower; }
  const Vec& upper() const { return d_.upper; }
  const Vec& x0() const { return d_.x0; }
  const Vec& c() const { return d_.c; }
  const Vec& sample_lower() const { return d_.sample_lower; }
  const Vec& sample_upper() const { return d_.sample_upper; }
  bool is_linear() const { return d_.f->is_affine() && (!d_.g || d_.g->is_affine()); }

  /// Scalar constraint values n_j^T g(x) (empty when m = 0).
  Vec scalar_constraints(const Vec& x) const;
  /// Box and g-feasibility within tol.
  bool is_feasible(const Vec& x, double tol = 1e-9) const;

  const ProblemData& data() const { return d_; }

 private:
  ProblemData d_;
  PolyCone c_dual_;
  Mat d_rows_;
};

/// Normalized sum of the extreme directions of C.
Vec default_direction(const PolyCone& C);

/// Random midpoint test: for x, y in the sample box,
/// ½f(x)+½f(y) - f(½x+½y) ∈ C and the same for g with D. Violations are the
/// largest negative normal component of that difference.
ConvexityReport check_convexity(const CvopProblem& prob, int trials, unsigned seed = 1);

/// Jacobians of f and g against central differences at random sample points;
/// error is |J - J_fd| / max(1, |J|).
GradientReport check_gradients(const CvopProblem& prob, int trials, unsigned seed = 1);

/// Up to `count` feasible points drawn uniformly from the sample box.
VecList sample_feasible(const CvopProblem& prob, int count, unsigned seed, int max_draws = 0);

}  // namespace cvop
