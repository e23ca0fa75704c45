#pragma once

// Log-barrier Newton method for  min φ(x)  s.t.  h(x) <= 0,  lower <= x <= upper.
//
// Infinite bounds are replaced by an artificial box |x_i| <= r_box, which keeps
// every barrier subproblem bounded. Unboundedness of the original problem is
// then read off the iterates: φ dropping below -m_div, or centres beyond r_div
// whose objective still decreases outward.

#include "cvop/types.hpp"

namespace cvop {

class SmoothProgram {
 public:
  virtual ~SmoothProgram() = default;
  virtual int dim() const = 0;
  virtual int num_constraints() const = 0;
  /// May be non-finite outside the domain; such points are rejected by the line search.
  virtual double objective(const Vec& x) const = 0;
  virtual Vec objective_gradient(const Vec& x) const = 0;
  virtual Mat objective_hessian(const Vec& x) const = 0;
  virtual Vec constraints(const Vec& x) const = 0;
  virtual Mat constraint_jacobian(const Vec& x) const = 0;
  /// sum_j lambda_j ∇²h_j(x)
  virtual Mat constraint_hessian(const Vec& x, const Vec& lambda) const = 0;
};

struct BarrierOptions {
  double m_div = 1e8;
  double r_div = 1e8;
  double r_box = 1e9;
  double slope_tol = 1e-6;
  double tol_gap = 1e-10;  // relative to 1 + |φ|
  double tol_kkt = 1e-8;
  double tol_feas = 1e-8;
  double mu0 = 1.0;
  double mu_factor = 0.2;
  int max_outer = 200;
  int max_newton = 200;
  bool detect_divergence = true;
};

enum class BarrierStatus { Converged, Divergent, MaxIter };

struct BarrierResult {
  BarrierStatus status = BarrierStatus::MaxIter;
  Vec x;
  double value = 0.0;
  /// φ at the end of every centring step (and at the divergence point).
  std::vector<double> trace;
  /// Unit escape direction x_end - x0 (divergent runs only).
  Vec ray;
  double gap = 0.0;
  double kkt_residual = 0.0;
  double max_violation = 0.0;
  int outer_iterations = 0;
  int newton_steps = 0;
};

/// x0 must be strictly feasible (coordinates with lower == upper are fixed).
BarrierResult barrier_minimize(const SmoothProgram& prog, const Vec& lower, const Vec& upper,
                               const Vec& x0, const BarrierOptions& opt = {});

const char* to_string(BarrierStatus s);

}  // namespace cvop
