#include "cvop/problem.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace cvop {

VectorFunction::VectorFunction(int in_dim, int out_dim, ValueFn value, JacobianFn jacobian,
                               HessianFn hessian, bool affine)
    : in_dim_(in_dim),
      out_dim_(out_dim),
      value_(std::move(value)),
      jacobian_(std::move(jacobian)),
      hessian_(std::move(hessian)),
      affine_(affine) {
  require(in_dim > 0 && out_dim > 0, "function: dimensions must be positive");
}

VectorFunction VectorFunction::affine(const Mat& a, const Vec& b) {
  require(a.rows() == b.size(), "affine function: row count mismatch");
  const int n = static_cast<int>(a.cols());
  return VectorFunction(
      n, static_cast<int>(a.rows()), [a, b](const Vec& x) -> Vec { return a * x + b; },
      [a](const Vec&) -> Mat { return a; },
      [n](const Vec&, const Vec&) -> Mat { return Mat::Zero(n, n); }, true);
}

Vec default_direction(const PolyCone& C) {
  Vec s = Vec::Zero(C.dim());
  for (const Vec& e : extreme_directions(C)) s += e;
  require(s.norm() > 0, "ordering cone has no interior direction");
  return s.normalized();
}

CvopProblem::CvopProblem(ProblemData data) : d_(std::move(data)) {
  require(d_.f != nullptr, "problem: objective is missing");
  const int n = d_.f->in_dim();
  const int q = d_.f->out_dim();
  require(d_.C.dim() == q, "problem: C has the wrong dimension");
  require(!d_.C.is_zero() && d_.C.is_pointed() && d_.C.is_solid(),
          "problem: C must be nontrivial, pointed and solid");
  if (d_.g) {
    require(d_.g->in_dim() == n, "problem: g has the wrong input dimension");
    require(d_.D.dim() == d_.g->out_dim(), "problem: D has the wrong dimension");
    require(!d_.D.is_zero() && d_.D.is_pointed() && d_.D.is_solid(),
            "problem: D must be nontrivial, pointed and solid");
    d_rows_.resize(static_cast<Eigen::Index>(d_.D.normals().size()), d_.g->out_dim());
    for (size_t j = 0; j < d_.D.normals().size(); ++j)
      d_rows_.row(static_cast<Eigen::Index>(j)) = d_.D.normals()[j].transpose();
  } else {
    d_rows_.resize(0, 0);
  }
  const double inf = std::numeric_limits<double>::infinity();
  if (d_.lower.size() == 0) d_.lower = Vec::Constant(n, -inf);
  if (d_.upper.size() == 0) d_.upper = Vec::Constant(n, inf);
  require(d_.lower.size() == n && d_.upper.size() == n, "problem: box has the wrong dimension");
  require(d_.x0.size() == n, "problem: start point has the wrong dimension");
  for (int i = 0; i < n; ++i) {
    require(d_.lower[i] <= d_.upper[i], "problem: empty box");
    const bool fixed = d_.lower[i] == d_.upper[i];
    require(fixed ? d_.x0[i] == d_.lower[i] : (d_.lower[i] < d_.x0[i] && d_.x0[i] < d_.upper[i]),
            "problem: start point is not strictly inside the box");
  }
  if (d_.g) {
    const Vec h = scalar_constraints(d_.x0);
    require(h.size() == 0 || h.maxCoeff() < 0, "problem: start point is not strictly feasible");
  }
  require(d_.f->value(d_.x0).allFinite(), "problem: objective is not finite at the start point");

  c_dual_ = dual_cone(d_.C);
  if (d_.c.size() == 0) d_.c = default_direction(d_.C);
  require(d_.c.size() == q, "problem: c has the wrong dimension");
  for (const Vec& nrm : d_.C.normals())
    require(nrm.dot(d_.c) > kTolCone * d_.c.norm(), "problem: c is not in the interior of C");

  if (d_.sample_lower.size() == 0) {
    d_.sample_lower = d_.lower.cwiseMax(Vec(d_.x0.array() - 10.0));
    d_.sample_upper = d_.upper.cwiseMin(Vec(d_.x0.array() + 10.0));
  }
  require(d_.sample_lower.size() == n && d_.sample_upper.size() == n,
          "problem: sample box has the wrong dimension");
  require(d_.sample_lower.allFinite() && d_.sample_upper.allFinite(),
          "problem: sample box must be finite");
}

Vec CvopProblem::scalar_constraints(const Vec& x) const {
  if (!d_.g) return Vec();
  return d_rows_ * d_.g->value(x);
}

bool CvopProblem::is_feasible(const Vec& x, double tol) const {
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x[i] < d_.lower[i] - tol || x[i] > d_.upper[i] + tol) return false;
  if (d_.g) {
    const Vec h = scalar_constraints(x);
    if (!h.allFinite() || (h.size() > 0 && h.maxCoeff() > tol)) return false;
  }
  return true;
}

namespace {

Vec draw(std::mt19937_64& rng, const Vec& lo, const Vec& hi) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec x(lo.size());
  for (Eigen::Index i = 0; i < lo.size(); ++i) x[i] = lo[i] + (hi[i] - lo[i]) * u(rng);
  return x;
}

// max_j max(0, -n_j^T v) over the unit normals of K.
double cone_violation(const PolyCone& k, const Vec& v) {
  double worst = 0.0;
  for (const Vec& nrm : k.normals()) worst = std::max(worst, -nrm.dot(v));
  return worst;
}

}  // namespace

ConvexityReport check_convexity(const CvopProblem& prob, int trials, unsigned seed) {
  std::mt19937_64 rng(seed);
  ConvexityReport r;
  r.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const Vec x = draw(rng, prob.sample_lower(), prob.sample_upper());
    const Vec y = draw(rng, prob.sample_lower(), prob.sample_upper());
    const Vec mid = 0.5 * (x + y);
    const Vec fx = prob.f().value(x), fy = prob.f().value(y), fm = prob.f().value(mid);
    if (!fx.allFinite() || !fy.allFinite() || !fm.allFinite()) continue;
    ++r.evaluated;
    const double vf = cone_violation(prob.C(), 0.5 * (fx + fy) - fm);
    double vg = 0.0;
    if (prob.g()) {
      const Vec gx = prob.g()->value(x), gy = prob.g()->value(y), gm = prob.g()->value(mid);
      if (gx.allFinite() && gy.allFinite() && gm.allFinite())
        vg = cone_violation(prob.D(), 0.5 * (gx + gy) - gm);
    }
    if (vf > r.max_violation_f || vg > r.max_violation_g) {
      r.worst_x = x;
      r.worst_y = y;
    }
    r.max_violation_f = std::max(r.max_violation_f, vf);
    r.max_violation_g = std::max(r.max_violation_g, vg);
  }
  return r;
}

namespace {

void compare_jacobian(const VectorFunction& fn, const Vec& x, int offset, GradientReport& r) {
  const Mat j = fn.jacobian(x);
  if (!j.allFinite()) return;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double h = 1e-6 * std::max(1.0, std::abs(x[k]));
    Vec xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    const Vec fp = fn.value(xp), fm = fn.value(xm);
    if (!fp.allFinite() || !fm.allFinite()) continue;
    const Vec fd = (fp - fm) / (2 * h);
    for (Eigen::Index i = 0; i < fd.size(); ++i) {
      const double err = std::abs(j(i, k) - fd[i]) / std::max(1.0, std::abs(j(i, k)));
      if (err > r.max_rel_error) {
        r.max_rel_error = err;
        r.worst_component = offset + static_cast<int>(i);
        r.worst_coordinate = static_cast<int>(k);
        r.worst_point = x;
      }
    }
  }
}

}  // namespace

GradientReport check_gradients(const CvopProblem& prob, int trials, unsigned seed) {
  std::mt19937_64 rng(seed);
  GradientReport r;
  for (int t = 0; t < trials; ++t) {
    const Vec x = draw(rng, prob.sample_lower(), prob.sample_upper());
    if (!prob.f().value(x).allFinite()) continue;
    compare_jacobian(prob.f(), x, 0, r);
    if (prob.g()) compare_jacobian(*prob.g(), x, prob.q(), r);
  }
  return r;
}

VecList sample_feasible(const CvopProblem& prob, int count, unsigned seed, int max_draws) {
  std::mt19937_64 rng(seed);
  if (max_draws <= 0) max_draws = 100 * count;
  VecList out;
  for (int t = 0; t < max_draws && static_cast<int>(out.size()) < count; ++t) {
    const Vec x = draw(rng, prob.sample_lower(), prob.sample_upper());
    if (prob.is_feasible(x, 0.0) && prob.f().value(x).allFinite()) out.push_back(x);
  }
  return out;
}

}  // namespace cvop
