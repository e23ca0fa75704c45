#include "cvop/sandwich.hpp"

#include "cvop/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cvop {

const char* to_string(SandwichStatus s) {
  switch (s) {
    case SandwichStatus::Certified: return "CERTIFIED";
    case SandwichStatus::Uncertified: return "UNCERTIFIED";
    case SandwichStatus::Divergent: return "DIVERGENT";
    case SandwichStatus::MaxIter: return "MAXITER";
  }
  return "?";
}

double directional_gap(const Vec& v, const UpperSet& a, const Vec& c) {
  if (a.is_empty()) return std::numeric_limits<double>::infinity();
  const int q = a.dim();
  const int np = static_cast<int>(a.points().size());
  const int nr = static_cast<int>(a.rec().generators().size());
  // The gap scales with the data; solving in a unit box keeps far images from
  // stalling the simplex. (Centring at v instead makes the LP fully degenerate.)
  double scale = std::max(1.0, v.lpNorm<Eigen::Infinity>());
  for (const Vec& p : a.points()) scale = std::max(scale, p.lpNorm<Eigen::Infinity>());
  // variables: t (free), λ (points), μ (rays)
  LinearProgram lp(1 + np + nr);
  lp.nonneg.assign(static_cast<size_t>(1 + np + nr), true);
  lp.nonneg[0] = false;
  lp.cost = Vec::Zero(1 + np + nr);
  lp.cost[0] = 1.0;
  for (int i = 0; i < q; ++i) {
    Vec row = Vec::Zero(1 + np + nr);
    row[0] = -c[i];
    for (int j = 0; j < np; ++j) row[1 + j] = a.points()[static_cast<size_t>(j)][i] / scale;
    for (int j = 0; j < nr; ++j) row[1 + np + j] = a.rec().generators()[static_cast<size_t>(j)][i];
    lp.add_eq(row, v[i] / scale);
  }
  Vec sum = Vec::Zero(1 + np + nr);
  sum.segment(1, np).setOnes();
  lp.add_eq(sum, 1.0);
  const LpResult r = solve_lp(lp);
  if (r.status != LpStatus::Optimal)
    fail(ErrorKind::Numerical, std::string("directional gap: LP ended ") + to_string(r.status));
  return r.value * scale;
}

namespace {

Halfspace support(const Vec& w, double gamma) {
  const double n = w.norm();
  return {w / n, gamma / n};
}

struct Entry {
  Vec w;
  ScalarVerdict v;
};

}  // namespace

UpperSet initial_outer(const CvopProblem& prob, const WeightBase& base, const BarrierOptions& opt) {
  std::vector<Halfspace> hs;
  const auto vs = solve_weighted_batch(prob, base.weights, opt);
  for (size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].status != ScalarStatus::Bounded)
      fail(ErrorKind::Numerical, std::string("initial outer: a base weight is ") + to_string(vs[i].status));
    hs.push_back(support(base.weights[i], vs[i].value));
  }
  return UpperSet::from_halfspaces(prob.q(), hs);
}

SandwichResult sandwich_solve(const CvopProblem& prob, const PolyCone& K, const SandwichOptions& opt) {
  const int q = prob.q();
  require(K.dim() == q, "sandwich: K has the wrong dimension");
  require(!K.is_zero() && K.is_pointed() && K.is_solid(), "sandwich: K must be pointed and solid");
  require(opt.eps > 0, "sandwich: eps must be positive");
  require(opt.budget >= 2, "sandwich: budget must allow at least two weights");
  if (q > 3) fail(ErrorKind::Unsupported, "sandwich: only q <= 3 is supported");

  SandwichResult res;
  res.K_used = K;
  res.c = opt.c ? *opt.c : prob.c();
  res.eps_requested = opt.eps;
  require(res.c.size() == q, "sandwich: c has the wrong dimension");
  for (const Vec& n : K.normals())
    require(n.dot(res.c) > kTolCone * res.c.norm(), "sandwich: c is not in the interior of K");
  const PolyCone kplus = dual_cone(K);

  VecList first;
  if (q == 3) {
    int pts = opt.grid_points_per_edge;
    if (pts == 0) {
      pts = 2;
      while (static_cast<int>(weight_base(kplus, res.c, pts + 1).weights.size()) <= opt.budget) ++pts;
    }
    first = weight_base(kplus, res.c, pts).weights;
  } else {
    first = weight_base(kplus, res.c, std::min(3, opt.budget)).weights;
  }
  if (static_cast<int>(first.size()) > opt.budget) first.resize(static_cast<size_t>(opt.budget));

  std::vector<Entry> entries;
  auto run_round = [&](const VecList& ws) {
    const auto vs = solve_weighted_batch(prob, ws, opt.barrier);
    bool ok = true;
    for (size_t i = 0; i < vs.size(); ++i) {
      res.weight_log.push_back({ws[i], vs[i].status, vs[i].value, res.rounds});
      if (vs[i].status == ScalarStatus::Bounded) {
        entries.push_back({ws[i], vs[i]});
      } else if (ok) {
        ok = false;
        res.offender = vs[i];
        res.status = vs[i].status == ScalarStatus::Divergent ? SandwichStatus::Divergent
                                                             : SandwichStatus::MaxIter;
      }
    }
    ++res.rounds;
    return ok;
  };

  if (!run_round(first)) {
    res.note = "a weight of K⁺ gives an unbounded scalarization: the problem is not bounded w.r.t. K";
    return res;
  }

  for (;;) {
    if (q == 2)
      std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return std::atan2(a.w[1], a.w[0]) < std::atan2(b.w[1], b.w[0]);
      });
    res.weak_minimizers.clear();
    res.images.clear();
    res.halfspaces.clear();
    for (const Entry& e : entries) {
      res.weak_minimizers.push_back(e.v.argmin);
      res.images.push_back(e.v.image);
      res.halfspaces.push_back(support(e.w, e.v.value));
    }
    res.inner = UpperSet::make(res.images, K);
    res.outer = UpperSet::from_halfspaces(q, res.halfspaces);

    // q = 2: the outer vertices are the intersections of angularly adjacent
    // supporting lines; pair index i stands for (i, i + 1).
    res.gaps.clear();
    std::vector<std::pair<double, size_t>> open;
    if (q == 2) {
      for (size_t i = 0; i + 1 < entries.size(); ++i) {
        Eigen::Matrix2d m;
        m << entries[i].w.transpose(), entries[i + 1].w.transpose();
        if (std::abs(m.determinant()) < 1e-14) continue;
        const Vec v = m.partialPivLu().solve(Eigen::Vector2d(entries[i].v.value, entries[i + 1].v.value));
        const double g = std::max(0.0, directional_gap(v, res.inner, res.c));
        res.gaps.push_back({v, g});
        if (g > opt.eps) open.emplace_back(g, i);
      }
    } else {
      for (const Vec& v : res.outer.points()) {
        const double g = std::max(0.0, directional_gap(v, res.inner, res.c));
        res.gaps.push_back({v, g});
        if (g > opt.eps) open.emplace_back(g, 0);
      }
    }
    res.eps_certified = 0.0;
    for (const VertexGap& g : res.gaps) res.eps_certified = std::max(res.eps_certified, g.gap);
    if (open.empty()) {
      res.status = SandwichStatus::Certified;
      break;
    }
    res.status = SandwichStatus::Uncertified;
    if (q == 3) {
      res.note = "fixed weight grid: " + std::to_string(open.size()) + " vertex gap(s) exceed eps";
      break;
    }
    const int room = opt.budget - static_cast<int>(res.weight_log.size());
    if (room <= 0) {
      res.note = "weight budget exhausted";
      break;
    }
    std::stable_sort(open.begin(), open.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    VecList next;
    for (const auto& [g, i] : open) {
      if (static_cast<int>(next.size()) >= room) break;
      const Vec& a = entries[i].w;
      const Vec& b = entries[i + 1].w;
      if ((a.normalized() - b.normalized()).norm() < 1e-12) continue;
      const Vec s = a + b;
      next.push_back(s / s.dot(res.c));
    }
    if (next.empty()) {
      res.note = "weights can no longer be separated";
      break;
    }
    if (!run_round(next)) {
      res.note = "an inserted weight gives an unbounded scalarization";
      return res;
    }
  }

  VecList shifted;
  for (const Vec& p : res.inner.points()) shifted.push_back(p - res.eps_certified * res.c);
  res.outer_shifted = UpperSet::make(shifted, K);
  return res;
}

DivergenceTrace divergence_demo(const CvopProblem& prob, const PolyCone& K, const Vec& y_bar,
                                const Vec& k_bar, int n_max, const BarrierOptions& opt,
                                unsigned seed) {
  const int q = prob.q();
  require(K.dim() == q && y_bar.size() == q && k_bar.size() == q, "divergence demo: dimension mismatch");
  require(n_max >= 2, "divergence demo: n_max must be at least 2");
  require(k_bar.norm() > 0 && K.contains(k_bar), "divergence demo: k_bar must be a nonzero element of K");
  DivergenceTrace tr;
  tr.K = K;
  tr.y_bar = y_bar;
  tr.k_bar = k_bar;

  for (const Vec& x : sample_feasible(prob, 1000, seed)) {
    ++tr.containment_samples;
    const Vec d = prob.f().value(x) - y_bar;
    bool inside = true;
    for (const Vec& n : K.normals()) inside = inside && n.dot(d) >= -1e-9 * (1.0 + d.norm());
    if (!inside) ++tr.containment_violations;
  }

  VecList ys;
  for (int n = 1; n <= n_max; ++n) ys.push_back(y_bar + n * k_bar);
  const auto ds = distance_batch(prob, ys, opt);
  for (int n = 1; n <= n_max; ++n) {
    const ImageDistance& d = ds[static_cast<size_t>(n - 1)];
    if (d.status != ScalarStatus::Bounded)
      fail(ErrorKind::Numerical, "divergence demo: distance solve at n = " + std::to_string(n) + " ended " +
                                     to_string(d.status));
    tr.distances.emplace_back(n, d.report.value);
  }

  tr.increasing_from = n_max + 1;
  for (int n = n_max; n >= 2; --n) {
    if (tr.distances[static_cast<size_t>(n - 1)].second > tr.distances[static_cast<size_t>(n - 2)].second)
      tr.increasing_from = n - 1;
    else
      break;
  }
  if (tr.increasing_from == n_max + 1) tr.increasing_from = n_max;
  const double d1 = tr.distances.front().second;
  const double dn = tr.distances.back().second;
  tr.growth_ratio = d1 > 0 ? dn / d1 : (dn > 0 ? std::numeric_limits<double>::infinity() : 1.0);
  const bool grows = dn > 10.0 * d1 && dn > 1e-6 && tr.increasing_from <= n_max / 2;
  tr.contradiction = !grows;
  if (tr.contradiction)
    tr.note = "distances do not grow without bound: k_bar may be a recession direction of the upper image";
  else
    tr.note = "distances grow from n = " + std::to_string(tr.increasing_from) +
              ": conv Y + K stays at infinite Hausdorff distance from the upper image";
  if (tr.containment_violations > 0)
    tr.note += "; warning: " + std::to_string(tr.containment_violations) +
               " sampled image point(s) lie outside y_bar + K";
  return tr;
}

}  // namespace cvop
