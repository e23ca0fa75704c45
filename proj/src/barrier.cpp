#include "cvop/barrier.hpp"

#include <cmath>
#include <algorithm>
#include <limits>

namespace cvop {

const char* to_string(BarrierStatus s) {
  switch (s) {
    case BarrierStatus::Converged: return "converged";
    case BarrierStatus::Divergent: return "divergent";
    case BarrierStatus::MaxIter: return "maxiter";
  }
  return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Barrier {
 public:
  Barrier(const SmoothProgram& p, const Vec& lower, const Vec& upper, const Vec& x0,
          const BarrierOptions& opt)
      : p_(p), x0_(x0) {
    const int n = p.dim();
    for (int i = 0; i < n; ++i)
      if (lower[i] < upper[i]) free_.push_back(i);
    const int nf = static_cast<int>(free_.size());
    lo_.resize(nf);
    hi_.resize(nf);
    for (int k = 0; k < nf; ++k) {
      const int i = free_[k];
      lo_[k] = std::isfinite(lower[i]) ? lower[i] : -opt.r_box;
      hi_[k] = std::isfinite(upper[i]) ? upper[i] : opt.r_box;
      require(lo_[k] < x0[i] && x0[i] < hi_[k], "barrier: start point is not strictly inside the box");
    }
  }

  int num_free() const { return static_cast<int>(free_.size()); }
  int num_terms() const { return p_.num_constraints() + 2 * num_free(); }
  const std::vector<int>& free() const { return free_; }

  /// Barrier value t·φ - Σ log(-h) - Σ log(box slack); +inf when infeasible.
  double value(const Vec& x, double t, double* phi_out = nullptr) const {
    double sum = 0.0;
    for (int k = 0; k < num_free(); ++k) {
      const double a = x[free_[k]] - lo_[k];
      const double b = hi_[k] - x[free_[k]];
      if (!(a > 0) || !(b > 0)) return kInf;
      sum -= std::log(a) + std::log(b);
    }
    if (p_.num_constraints() > 0) {
      const Vec h = p_.constraints(x);
      for (Eigen::Index j = 0; j < h.size(); ++j) {
        if (!(h[j] < 0)) return kInf;
        sum -= std::log(-h[j]);
      }
    }
    const double phi = p_.objective(x);
    if (!std::isfinite(phi)) return kInf;
    if (phi_out) *phi_out = phi;
    return t * phi + sum;
  }

  /// Gradient and Hessian of the barrier restricted to free coordinates.
  void derivatives(const Vec& x, double t, Vec& grad, Mat& hess) const {
    const int nf = num_free();
    const Vec g = p_.objective_gradient(x);
    Mat h = t * p_.objective_hessian(x);
    Vec gf = t * g;
    if (p_.num_constraints() > 0) {
      const Vec hv = p_.constraints(x);
      const Mat jac = p_.constraint_jacobian(x);
      const Vec lam = (-hv).cwiseInverse();
      gf += jac.transpose() * lam;
      h += p_.constraint_hessian(x, lam);
      h += jac.transpose() * lam.cwiseAbs2().asDiagonal() * jac;
    }
    grad.resize(nf);
    hess.resize(nf, nf);
    for (int a = 0; a < nf; ++a) {
      grad[a] = gf[free_[a]];
      for (int b = 0; b < nf; ++b) hess(a, b) = h(free_[a], free_[b]);
    }
    for (int k = 0; k < nf; ++k) {
      const double da = x[free_[k]] - lo_[k];
      const double db = hi_[k] - x[free_[k]];
      grad[k] += -1.0 / da + 1.0 / db;
      hess(k, k) += 1.0 / (da * da) + 1.0 / (db * db);
    }
  }

  Vec objective_gradient_full(const Vec& x) const { return p_.objective_gradient(x); }

 private:
  const SmoothProgram& p_;
  Vec x0_;
  std::vector<int> free_;
  Vec lo_, hi_;
};

// Newton direction on the Jacobi-scaled Hessian. Barrier Hessians mix
// curvatures like 1 and 1e-17 (a coordinate far out along a flat ray), which
// an unscaled Cholesky cannot tell from singular. Diagonal regularisation is
// the fallback for indefinite or singular scaled matrices.
Vec newton_direction(const Mat& h, const Vec& g) {
  const Vec s = h.diagonal().cwiseAbs().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  const Mat hs = s.asDiagonal() * h * s.asDiagonal();
  const Vec gs = s.cwiseProduct(g);
  double delta = 0.0;
  for (int k = 0; k < 40; ++k, delta = (delta == 0.0 ? 1e-12 : 10 * delta)) {
    Mat hr = hs;
    hr.diagonal().array() += delta;
    Eigen::LLT<Mat> llt(hr);
    if (llt.info() != Eigen::Success) continue;
    const Vec d = s.cwiseProduct(llt.solve(-gs));
    if (d.allFinite()) return d;
  }
  return -s.cwiseProduct(gs);
}

}  // namespace

BarrierResult barrier_minimize(const SmoothProgram& prog, const Vec& lower, const Vec& upper,
                               const Vec& x0, const BarrierOptions& opt) {
  const int n = prog.dim();
  require(lower.size() == n && upper.size() == n && x0.size() == n, "barrier: dimension mismatch");
  Barrier bar(prog, lower, upper, x0, opt);
  BarrierResult res;
  res.x = x0;

  if (prog.num_constraints() > 0) {
    const Vec h = prog.constraints(x0);
    if (bar.num_free() == 0) {
      res.max_violation = std::max(0.0, h.maxCoeff());
      require(res.max_violation <= opt.tol_feas, "barrier: fixed point violates the constraints");
    } else {
      require(h.allFinite() && h.maxCoeff() < 0, "barrier: start point is not strictly feasible");
    }
  }
  if (bar.num_free() == 0) {
    res.status = BarrierStatus::Converged;
    res.value = prog.objective(x0);
    res.trace.push_back(res.value);
    return res;
  }

  auto diverged = [&](const Vec& x, double phi) {
    res.status = BarrierStatus::Divergent;
    res.x = x;
    res.value = phi;
    res.trace.push_back(phi);
    const Vec step = x - x0;
    res.ray = step.norm() > 0 ? Vec(step.normalized()) : Vec(Vec::Zero(n));
    return res;
  };

  Vec x = x0;
  // Start where the objective and the barrier pull with comparable force;
  // a large objective gradient otherwise pins the first centre to the boundary.
  double t = 1.0 / (opt.mu0 * std::max(1.0, prog.objective_gradient(x0).cwiseAbs().maxCoeff()));
  const double m_terms = bar.num_terms();
  Vec grad;
  Mat hess;
  bool stalled = false;
  for (int outer = 0; outer < opt.max_outer; ++outer) {
    res.outer_iterations = outer + 1;
    double phi = 0.0;
    double fx = bar.value(x, t, &phi);
    bool centred = false;
    for (int k = 0; k < opt.max_newton && !centred; ++k) {
      bar.derivatives(x, t, grad, hess);
      const Vec d = newton_direction(hess, grad);
      const double slope = grad.dot(d);
      if (!(slope < 0) || -slope / 2 <= 1e-10) {
        centred = true;
        break;
      }
      Vec xn = x;
      double s = 1.0, fn = kInf, phin = phi;
      bool accepted = false;
      for (int ls = 0; ls < 400; ++ls, s *= 0.5) {
        for (int a = 0; a < bar.num_free(); ++a) xn[bar.free()[a]] = x[bar.free()[a]] + s * d[a];
        fn = bar.value(xn, t, &phin);
        if (std::isfinite(fn) && fn <= fx + 1e-4 * s * slope) {
          accepted = true;
          break;
        }
      }
      ++res.newton_steps;
      // No decrease possible in floating point: as centred as it gets.
      if (!accepted || fn >= fx) {
        centred = true;
        break;
      }
      x = xn;
      fx = fn;
      phi = phin;
      if (opt.detect_divergence && phi < -opt.m_div) return diverged(x, phi);
    }
    res.trace.push_back(phi);

    if (opt.detect_divergence) {
      double xmax = 0.0;
      for (int i : bar.free()) xmax = std::max(xmax, std::abs(x[i]));
      if (xmax > opt.r_div) {
        const Vec u = (x - x0).normalized();
        if (bar.objective_gradient_full(x).dot(u) < -opt.slope_tol) return diverged(x, phi);
      }
    }
    // One more round at the same t before giving up on exact centring; flat
    // directions far out in the artificial box carry curvature below rounding.
    if (!centred && !stalled) {
      stalled = true;
      continue;
    }
    stalled = false;

    res.gap = m_terms / t;
    // A small relative gap at a hugely negative φ that is still falling is a
    // slow divergence, not convergence.
    const size_t nt = res.trace.size();
    const bool settled = nt < 2 || std::abs(res.trace[nt - 2] - phi) <= 1e-6 * (1.0 + std::abs(phi));
    if (res.gap <= opt.tol_gap * (1.0 + std::abs(phi)) && settled) {
      bar.derivatives(x, t, grad, hess);
      res.status = BarrierStatus::Converged;
      res.x = x;
      res.value = phi;
      res.kkt_residual = grad.cwiseAbs().maxCoeff() / t;
      if (prog.num_constraints() > 0) res.max_violation = std::max(0.0, prog.constraints(x).maxCoeff());
      return res;
    }
    t /= opt.mu_factor;
  }
  res.status = BarrierStatus::MaxIter;
  res.x = x;
  res.value = prog.objective(x);
  return res;
}

}  // namespace cvop
