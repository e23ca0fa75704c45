#include "cvop/scalar.hpp"

#include "cvop/projection.hpp"

#include <cstdlib>
#include <exception>
#include <omp.h>

namespace cvop {

const char* to_string(ScalarStatus s) {
  switch (s) {
    case ScalarStatus::Bounded: return "BOUNDED";
    case ScalarStatus::Divergent: return "DIVERGENT";
    case ScalarStatus::MaxIter: return "MAXITER";
  }
  return "?";
}

namespace {

ScalarStatus from_barrier(BarrierStatus s) {
  switch (s) {
    case BarrierStatus::Converged: return ScalarStatus::Bounded;
    case BarrierStatus::Divergent: return ScalarStatus::Divergent;
    case BarrierStatus::MaxIter: return ScalarStatus::MaxIter;
  }
  return ScalarStatus::MaxIter;
}

// Shared constraint block n_j^T g(x) <= 0.
struct GBlock {
  const CvopProblem& prob;
  int rows() const { return prob.g() ? static_cast<int>(prob.constraint_rows().rows()) : 0; }
  Vec value(const Vec& x) const { return prob.scalar_constraints(x); }
  Mat jacobian(const Vec& x) const { return prob.constraint_rows() * prob.g()->jacobian(x); }
  Mat hessian(const Vec& x, const Vec& lam) const {
    return prob.g()->weighted_hessian(x, prob.constraint_rows().transpose() * lam);
  }
};

class WeightedProgram : public SmoothProgram {
 public:
  WeightedProgram(const CvopProblem& prob, const Vec& w) : prob_(prob), g_{prob}, w_(w) {
    for (Eigen::Index i = 0; i < w.size(); ++i)
      if (w[i] != 0.0) active_.push_back(static_cast<int>(i));
  }
  int dim() const override { return prob_.n(); }
  int num_constraints() const override { return g_.rows(); }
  double objective(const Vec& x) const override {
    const Vec f = prob_.f().value(x);
    double s = 0.0;
    for (int i : active_) s += w_[i] * f[i];
    return s;
  }
  Vec objective_gradient(const Vec& x) const override {
    const Mat j = prob_.f().jacobian(x);
    Vec g = Vec::Zero(prob_.n());
    for (int i : active_) g += w_[i] * j.row(i).transpose();
    return g;
  }
  Mat objective_hessian(const Vec& x) const override { return prob_.f().weighted_hessian(x, w_); }
  Vec constraints(const Vec& x) const override { return g_.value(x); }
  Mat constraint_jacobian(const Vec& x) const override { return g_.jacobian(x); }
  Mat constraint_hessian(const Vec& x, const Vec& lam) const override { return g_.hessian(x, lam); }

 private:
  const CvopProblem& prob_;
  GBlock g_;
  Vec w_;
  std::vector<int> active_;
};

// Variables v = (x, z):  min ½‖y - z‖²  s.t.  n^T (f(x) - z) <= 0 for the
// normals n of C, and the g-constraints.
class DistanceProgram : public SmoothProgram {
 public:
  DistanceProgram(const CvopProblem& prob, const Vec& y) : prob_(prob), g_{prob}, y_(y) {
    const auto& nr = prob.C().normals();
    normals_.resize(static_cast<Eigen::Index>(nr.size()), prob.q());
    for (size_t a = 0; a < nr.size(); ++a) normals_.row(static_cast<Eigen::Index>(a)) = nr[a].transpose();
  }
  int dim() const override { return prob_.n() + prob_.q(); }
  int num_constraints() const override { return static_cast<int>(normals_.rows()) + g_.rows(); }
  double objective(const Vec& v) const override { return 0.5 * (y_ - v.tail(prob_.q())).squaredNorm(); }
  Vec objective_gradient(const Vec& v) const override {
    Vec g = Vec::Zero(dim());
    g.tail(prob_.q()) = v.tail(prob_.q()) - y_;
    return g;
  }
  Mat objective_hessian(const Vec&) const override {
    Mat h = Mat::Zero(dim(), dim());
    h.bottomRightCorner(prob_.q(), prob_.q()).setIdentity();
    return h;
  }
  Vec constraints(const Vec& v) const override {
    Vec h(num_constraints());
    const Vec x = v.head(prob_.n());
    h.head(normals_.rows()) = normals_ * (prob_.f().value(x) - v.tail(prob_.q()));
    if (g_.rows() > 0) h.tail(g_.rows()) = g_.value(x);
    return h;
  }
  Mat constraint_jacobian(const Vec& v) const override {
    const int n = prob_.n(), q = prob_.q();
    const Vec x = v.head(n);
    Mat j = Mat::Zero(num_constraints(), dim());
    j.topLeftCorner(normals_.rows(), n) = normals_ * prob_.f().jacobian(x);
    j.topRightCorner(normals_.rows(), q) = -normals_;
    if (g_.rows() > 0) j.bottomLeftCorner(g_.rows(), n) = g_.jacobian(x);
    return j;
  }
  Mat constraint_hessian(const Vec& v, const Vec& lam) const override {
    const int n = prob_.n();
    const Vec x = v.head(n);
    Mat h = Mat::Zero(dim(), dim());
    const Vec lam_c = lam.head(normals_.rows());
    h.topLeftCorner(n, n) = prob_.f().weighted_hessian(x, normals_.transpose() * lam_c);
    if (g_.rows() > 0) h.topLeftCorner(n, n) += g_.hessian(x, lam.tail(g_.rows()));
    return h;
  }

 private:
  const CvopProblem& prob_;
  GBlock g_;
  Vec y_;
  Mat normals_;
};

void check_weight(const CvopProblem& prob, const Vec& w) {
  require(w.size() == prob.q(), "solve_weighted: weight has the wrong dimension");
  require(w.allFinite() && w.norm() > 0, "solve_weighted: weight must be nonzero");
  require(prob.C_dual().contains(w), "solve_weighted: weight is not in the dual cone of C");
}

ScalarVerdict solve_checked(const CvopProblem& prob, const Vec& w, const BarrierOptions& opt) {
  WeightedProgram p(prob, w);
  const BarrierResult r = barrier_minimize(p, prob.lower(), prob.upper(), prob.x0(), opt);
  ScalarVerdict v;
  v.status = from_barrier(r.status);
  v.w = w;
  v.trace = r.trace;
  v.kkt_residual = r.kkt_residual;
  v.gap = r.gap;
  v.newton_steps = r.newton_steps;
  v.m_div = opt.m_div;
  v.r_div = opt.r_div;
  v.value = r.value;
  v.argmin = r.x;
  if (v.status == ScalarStatus::Divergent) v.ray = r.ray;
  else v.image = prob.f().value(r.x);
  return v;
}

ImageDistance distance_checked(const CvopProblem& prob, const Vec& y, const BarrierOptions& opt) {
  DistanceProgram p(prob, y);
  const int n = prob.n(), q = prob.q();
  const double inf = std::numeric_limits<double>::infinity();
  Vec lo(n + q), hi(n + q), v0(n + q);
  lo << prob.lower(), Vec::Constant(q, -inf);
  hi << prob.upper(), Vec::Constant(q, inf);
  v0 << prob.x0(), prob.f().value(prob.x0()) + prob.c();
  BarrierOptions o = opt;
  o.detect_divergence = false;
  const BarrierResult r = barrier_minimize(p, lo, hi, v0, o);
  ImageDistance out;
  out.status = from_barrier(r.status);
  out.x = r.x.head(n);
  // For the final x the best cone element is the projection of y - f(x) onto C.
  const Vec fx = prob.f().value(out.x);
  const Projection pk = project_onto_cone(y - fx, prob.C().generators());
  Vec z = fx + pk.point;
  const Vec zb = r.x.tail(q);
  if ((y - zb).norm() < (y - z).norm()) z = zb;
  out.report.value = (y - z).norm();
  out.report.witness_from = y;
  out.report.witness_to = z;
  return out;
}

template <class Out, class Fn>
std::vector<Out> run_batch(size_t count, bool parallel, Fn fn) {
  std::vector<Out> out(count);
  std::exception_ptr err;
  const long long nb = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic) num_threads(batch_threads()) if (parallel)
  for (long long i = 0; i < nb; ++i) {
    try {
      out[static_cast<size_t>(i)] = fn(static_cast<size_t>(i));
    } catch (...) {
#pragma omp critical(cvop_batch_error)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace

ScalarVerdict solve_weighted(const CvopProblem& prob, const Vec& w, const BarrierOptions& opt) {
  check_weight(prob, w);
  return solve_checked(prob, w, opt);
}

ImageDistance distance_to_upper_image(const CvopProblem& prob, const Vec& y,
                                      const BarrierOptions& opt) {
  require(y.size() == prob.q(), "distance: point has the wrong dimension");
  return distance_checked(prob, y, opt);
}

int batch_threads() {
  if (const char* env = std::getenv("CVOP_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return t;
  }
  return omp_get_max_threads();
}

std::vector<ScalarVerdict> solve_weighted_batch(const CvopProblem& prob, const VecList& ws,
                                                const BarrierOptions& opt) {
  for (const Vec& w : ws) check_weight(prob, w);
  return run_batch<ScalarVerdict>(ws.size(), true,
                                  [&](size_t i) { return solve_checked(prob, ws[i], opt); });
}

std::vector<ScalarVerdict> solve_weighted_batch_serial(const CvopProblem& prob, const VecList& ws,
                                                       const BarrierOptions& opt) {
  std::vector<ScalarVerdict> out;
  out.reserve(ws.size());
  for (const Vec& w : ws) out.push_back(solve_weighted(prob, w, opt));
  return out;
}

std::vector<ImageDistance> distance_batch(const CvopProblem& prob, const VecList& ys,
                                          const BarrierOptions& opt) {
  for (const Vec& y : ys) require(y.size() == prob.q(), "distance: point has the wrong dimension");
  return run_batch<ImageDistance>(ys.size(), true,
                                  [&](size_t i) { return distance_checked(prob, ys[i], opt); });
}

std::vector<ImageDistance> distance_batch_serial(const CvopProblem& prob, const VecList& ys,
                                                 const BarrierOptions& opt) {
  std::vector<ImageDistance> out;
  out.reserve(ys.size());
  for (const Vec& y : ys) out.push_back(distance_to_upper_image(prob, y, opt));
  return out;
}

}  // namespace cvop
