#include "cvop/classifier.hpp"

#include "cvop/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cvop {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Bounded: return "BOUNDED";
    case Verdict::SelfBoundedUnbounded: return "SELF_BOUNDED_UNBOUNDED";
    case Verdict::NotSelfBounded: return "NOT_SELF_BOUNDED";
    case Verdict::Undetermined: return "UNDETERMINED";
  }
  return "?";
}

double angle_between(const Vec& a, const Vec& b) {
  const double c = a.normalized().dot(b.normalized());
  return std::acos(std::clamp(c, -1.0, 1.0));
}

Vec rotate_towards(const Vec& a, const Vec& b, double angle) {
  const Vec u = a.normalized();
  Vec perp = b.normalized() - u.dot(b.normalized()) * u;
  if (perp.norm() == 0.0) return u;
  perp.normalize();
  return (std::cos(angle) * u + std::sin(angle) * perp).normalized();
}

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

Vec clean(Vec v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) < 1e-15) v[i] = 0.0;
  return v;
}

VecList arc_grid(const VecList& ext, double res_deg) {
  Vec a = ext[0], b = ext[1];
  if (a[0] * b[1] - a[1] * b[0] < 0) std::swap(a, b);
  const double ta = std::atan2(a[1], a[0]) / kDeg;
  const double span = angle_between(a, b) / kDeg;
  VecList out{a};
  const double eps = 1e-9;
  for (long k = static_cast<long>(std::ceil((ta + eps) / res_deg));
       k * res_deg < ta + span - eps; ++k) {
    const double th = k * res_deg * kDeg;
    out.push_back(clean(make_vec({std::cos(th), std::sin(th)})));
  }
  out.push_back(b);
  return out;
}

}  // namespace

VecList weight_grid(const PolyCone& dual, const Vec& c, double resolution_deg) {
  require(resolution_deg > 0, "resolution must be positive");
  const VecList ext = extreme_directions(dual);
  const int q = dual.dim();
  if (ext.size() == 1) return ext;
  if (q == 2) return arc_grid(ext, resolution_deg);
  if (q != 3) fail(ErrorKind::Unsupported, "W grid: only q <= 3 is supported");
  double widest = 0.0;
  for (size_t i = 0; i < ext.size(); ++i)
    for (size_t j = i + 1; j < ext.size(); ++j) widest = std::max(widest, angle_between(ext[i], ext[j]));
  const int nseg = std::max(1, static_cast<int>(std::ceil(widest / kDeg / resolution_deg - 1e-9)));
  VecList out;
  for (const Vec& w : weight_base(dual, c, nseg + 1).weights) out.push_back(w.normalized());
  return out;
}

WEstimate estimate_W(const CvopProblem& prob, double resolution_deg, const BarrierOptions& opt) {
  WEstimate est;
  est.resolution_deg = resolution_deg;
  est.grid = weight_grid(prob.C_dual(), prob.c(), resolution_deg);
  est.verdicts = solve_weighted_batch(prob, est.grid, opt);
  for (size_t i = 0; i < est.grid.size(); ++i) {
    switch (est.verdicts[i].status) {
      case ScalarStatus::Bounded: est.bounded_dirs.push_back(est.grid[i]); break;
      case ScalarStatus::Divergent: est.divergent_dirs.push_back(est.grid[i]); break;
      case ScalarStatus::MaxIter: est.undetermined_dirs.push_back(est.grid[i]); break;
    }
  }
  est.cone_hull = est.bounded_dirs.empty() ? PolyCone::zero(prob.q())
                                           : PolyCone::from_generators(prob.q(), est.bounded_dirs);
  return est;
}

PolyCone estimate_recc_P(const WEstimate& est) {
  if (est.cone_hull.is_zero())
    fail(ErrorKind::Numerical,
         "no bounded weight direction: W looks like {0}, so the upper image may be all of R^q");
  return dual_cone(est.cone_hull);
}

Anchor anchor_point(const CvopProblem& prob, const WeightBase& base, const BarrierOptions& opt) {
  const auto vs = solve_weighted_batch(prob, base.weights, opt);
  Anchor a;
  const int q = prob.q();
  LinearProgram lp(q);
  Vec s = Vec::Zero(q);
  for (size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].status != ScalarStatus::Bounded)
      fail(ErrorKind::Numerical, std::string("anchor: base weight is ") + to_string(vs[i].status));
    a.weights.push_back(base.weights[i]);
    a.gamma.push_back(vs[i].value);
    lp.add_le(base.weights[i], vs[i].value);
    s += base.weights[i];
  }
  lp.cost = -s;
  const LpResult r = solve_lp(lp);
  if (r.status == LpStatus::Infeasible)
    fail(ErrorKind::Numerical, "anchor: the anchor set is empty on the sampled base");
  if (r.status != LpStatus::Optimal)
    fail(ErrorKind::Numerical, std::string("anchor: LP ended ") + to_string(r.status));
  a.point = r.x;
  return a;
}

namespace {

class Classifier {
 public:
  Classifier(const CvopProblem& prob, const ClassifyOptions& opt, BoundednessReport& rep)
      : prob_(prob), opt_(opt), rep_(rep) {}

  ScalarVerdict solve(const Vec& w, const char* role) {
    ScalarVerdict v = solve_weighted(prob_, w, opt_.barrier);
    rep_.evidence.push_back({role, v});
    return v;
  }

  // Bisection between bounded u and divergent v, then a look at the limit ray.
  BoundaryRay refine(const Vec& u, const Vec& v) {
    BoundaryRay br;
    Vec lo = u, hi = v;
    bool lo_moved = false, hi_moved = false;
    while (angle_between(lo, hi) > opt_.bisect_tol_rad) {
      const Vec mid = (lo + hi).normalized();
      const ScalarVerdict s = solve(mid, "bisect");
      if (s.status == ScalarStatus::Bounded) {
        lo = mid;
        lo_moved = true;
      } else if (s.status == ScalarStatus::Divergent) {
        hi = mid;
        hi_moved = true;
      } else {
        br.direction = lo;
        br.status = ScalarStatus::MaxIter;
        br.how = "bisect";
        return br;
      }
    }
    br.bracket_rad = angle_between(lo, hi);
    if (!lo_moved) {
      br.direction = u;
      br.status = ScalarStatus::Bounded;
      br.how = "bounded_end";
      return br;
    }
    const Vec b = hi_moved ? lo : v;
    br.how = hi_moved ? "limit" : "divergent_end";
    Vec inner;
    br.status = limit_test(b, hi, u, br.limit_values, inner);
    if (!hi_moved && br.status != ScalarStatus::MaxIter) br.status = ScalarStatus::Divergent;
    // A bounded limit is represented by a probe slightly inside it: the
    // divergence test cannot separate W from its complement within ~1e-6 rad.
    br.direction = br.status == ScalarStatus::Bounded ? inner : b;
    return br;
  }

  // γ at three decades inside the limit ray b (1e-2, 1e-3, 1e-4 rad), moving
  // away from the divergent side. Increments that stop shrinking mean
  // γ -> -inf at b. The probes stay clear of the bisection bracket and of the
  // ~1e-6 rad band where the divergence test cannot resolve W. Where that arc
  // leaves C⁺ (b on a face of C⁺ in q = 3) the probes head for `inside`.
  ScalarStatus limit_test(const Vec& b, const Vec& away, const Vec& inside,
                          std::vector<double>& values, Vec& inner) {
    auto tangent = [&](const Vec& towards) {
      Vec t = towards - b.dot(towards) * b;
      return t.norm() < 1e-14 ? Vec() : Vec(t.normalized());
    };
    double reach = 1e-2;
    Vec t = tangent(-away);
    auto probe = [&](double a) { return Vec((std::cos(a) * b + std::sin(a) * t).normalized()); };
    if (t.size() == 0 || !prob_.C_dual().contains(probe(reach), 0.0)) {
      t = tangent(inside);
      if (t.size() == 0) return ScalarStatus::MaxIter;
      reach = std::min(reach, angle_between(b, inside));
    }
    for (double a : {reach, reach / 10, reach / 100}) {
      const ScalarVerdict s = solve(probe(a), "limit");
      if (s.status != ScalarStatus::Bounded) return ScalarStatus::MaxIter;
      values.push_back(s.value);
      inner = s.w.normalized();
    }
    const double last = values[1] - values[2];
    const double prev = values[0] - values[1];
    const double tol = 1e-6 * (1.0 + std::abs(values[2]));
    return (last > tol && last >= 0.5 * prev) ? ScalarStatus::Divergent : ScalarStatus::Bounded;
  }

  void set_anchor(const PolyCone& cone) {
    try {
      const int pts = prob_.q() == 2 ? opt_.anchor_points : std::max(2, opt_.anchor_points / 2);
      Anchor a = anchor_point(prob_, weight_base(cone, prob_.c(), pts), opt_.barrier);
      rep_.anchor = a.point;
      rep_.anchor_detail = std::move(a);
    } catch (const Error& e) {
      rep_.verdict = Verdict::Undetermined;
      rep_.note = e.what();
    }
  }

  void run() {
    const int q = prob_.q();
    const PolyCone& dual = prob_.C_dual();
    rep_.resolution_deg = opt_.resolution_deg;

    const VecList ext = extreme_directions(dual);
    bool all_bounded = true;
    for (const ScalarVerdict& v : solve_weighted_batch(prob_, ext, opt_.barrier)) {
      rep_.evidence.push_back({"extreme", v});
      all_bounded = all_bounded && v.status == ScalarStatus::Bounded;
    }
    if (all_bounded) {
      rep_.verdict = Verdict::Bounded;
      rep_.recc_estimate = prob_.C();
      rep_.w_closure = dual;
      set_anchor(dual);
      return;
    }

    WEstimate est = estimate_W(prob_, opt_.resolution_deg, opt_.barrier);
    for (const ScalarVerdict& v : est.verdicts) rep_.evidence.push_back({"grid", v});
    rep_.w_estimate = est;
    if (!est.undetermined_dirs.empty()) {
      rep_.verdict = Verdict::Undetermined;
      rep_.note = "MAXITER on " + std::to_string(est.undetermined_dirs.size()) + " grid direction(s)";
      return;
    }
    if (est.bounded_dirs.empty()) {
      rep_.verdict = Verdict::Undetermined;
      rep_.note = "no bounded weight on the grid; the upper image may be all of R^q";
      return;
    }

    const auto& grid = est.grid;
    const auto& vs = est.verdicts;
    std::vector<std::pair<size_t, size_t>> pairs;  // (bounded, divergent) neighbours
    if (q == 2) {
      std::vector<size_t> b;
      for (size_t i = 0; i < grid.size(); ++i)
        if (vs[i].status == ScalarStatus::Bounded) b.push_back(i);
      if (b.back() - b.front() + 1 != b.size()) {
        rep_.verdict = Verdict::Undetermined;
        rep_.note = "bounded grid directions do not form one arc";
        return;
      }
      if (b.front() > 0) pairs.emplace_back(b.front(), b.front() - 1);
      if (b.back() + 1 < grid.size()) pairs.emplace_back(b.back(), b.back() + 1);
    } else {
      std::vector<double> nn(grid.size(), 1e300);
      for (size_t i = 0; i < grid.size(); ++i)
        for (size_t j = 0; j < grid.size(); ++j)
          if (i != j) nn[i] = std::min(nn[i], angle_between(grid[i], grid[j]));
      for (size_t i = 0; i < grid.size(); ++i) {
        if (vs[i].status != ScalarStatus::Bounded) continue;
        for (size_t j = 0; j < grid.size(); ++j)
          if (vs[j].status == ScalarStatus::Divergent &&
              angle_between(grid[i], grid[j]) <= 1.5 * std::max(nn[i], nn[j]))
            pairs.emplace_back(i, j);
      }
    }

    VecList closure = est.bounded_dirs;
    bool any_divergent = false, any_unknown = false;
    for (const auto& [i, j] : pairs) {
      BoundaryRay br = refine(grid[i], grid[j]);
      closure.push_back(br.direction);
      any_divergent = any_divergent || br.status == ScalarStatus::Divergent;
      any_unknown = any_unknown || br.status == ScalarStatus::MaxIter;
      rep_.boundary.push_back(std::move(br));
    }
    if (q == 2) {
      // Arc ends that are extreme directions of C⁺ bound cl Ŵ themselves.
      for (size_t i : {size_t{0}, grid.size() - 1})
        if (vs[i].status == ScalarStatus::Bounded)
          rep_.boundary.push_back({grid[i], ScalarStatus::Bounded, 0.0, "grid", {}});
    }
    rep_.w_closure = PolyCone::from_generators(q, closure);
    rep_.recc_estimate = dual_cone(rep_.w_closure);

    if (any_unknown) {
      rep_.verdict = Verdict::Undetermined;
      rep_.note = "boundary of W could not be resolved";
    } else if (any_divergent) {
      rep_.verdict = Verdict::NotSelfBounded;
      rep_.note = "a boundary ray of cl W is not in W";
    } else {
      rep_.verdict = Verdict::SelfBoundedUnbounded;
      set_anchor(rep_.w_closure);
    }
  }

 private:
  const CvopProblem& prob_;
  const ClassifyOptions& opt_;
  BoundednessReport& rep_;
};

}  // namespace

BoundednessReport classify(const CvopProblem& prob, const ClassifyOptions& opt) {
  BoundednessReport rep;
  Classifier(prob, opt, rep).run();
  return rep;
}

}  // namespace cvop
