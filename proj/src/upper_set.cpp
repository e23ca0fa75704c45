#include "cvop/upper_set.hpp"

#include "cvop/double_description.hpp"
#include "cvop/lp.hpp"
#include "cvop/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace cvop {

namespace {

constexpr double kTolHomog = 1e-10;

VecList prune_points(VecList pts, const PolyCone& rec) {
  std::sort(pts.begin(), pts.end(), lex_less);
  VecList uniq;
  for (const Vec& p : pts) {
    if (!uniq.empty() && (uniq.back() - p).norm() <= kTolSet * (1.0 + p.norm())) continue;
    uniq.push_back(p);
  }
  const VecList& rays = rec.generators();
  for (size_t i = 0; i < uniq.size() && uniq.size() > 1;) {
    VecList others;
    for (size_t j = 0; j < uniq.size(); ++j)
      if (j != i) others.push_back(uniq[j]);
    const double d = project_onto_polyhedron(uniq[i], others, rays).distance;
    if (d <= kTolSet * (1.0 + uniq[i].norm())) {
      uniq.erase(uniq.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  return uniq;
}

double point_scale(const VecList& pts) {
  double s = 1.0;
  for (const Vec& p : pts) s = std::max(s, p.cwiseAbs().maxCoeff());
  return s;
}

Vec lift(const Vec& head, double t) {
  Vec v(head.size() + 1);
  v.head(head.size()) = head;
  v[head.size()] = t;
  return v;
}

}  // namespace

UpperSet UpperSet::empty(int dim) {
  require(dim >= 1, "upper set: dimension must be at least 1");
  UpperSet s;
  s.dim_ = dim;
  s.rec_ = PolyCone::zero(dim);
  return s;
}

UpperSet UpperSet::make(const VecList& points, const PolyCone& rec) {
  const int q = rec.dim();
  require(q >= 1, "upper set: recession cone has no dimension");
  for (const Vec& p : points) {
    require(p.size() == q, "upper set: point has wrong dimension");
    require(p.allFinite(), "upper set: point is not finite");
  }
  if (points.empty()) {
    UpperSet e = empty(q);
    e.rec_ = rec;
    return e;
  }
  UpperSet s;
  s.dim_ = q;
  s.rec_ = rec;
  s.points_ = prune_points(points, rec);
  if (q <= 3) s.halfspaces_ = compute_halfspaces(s);
  return s;
}

std::vector<Halfspace> compute_halfspaces(const UpperSet& a) {
  require(!a.is_empty(), "halfspaces: set is empty");
  const int q = a.dim();
  if (q + 1 > kMaxConversionDim)
    fail(ErrorKind::Unsupported, "halfspaces: dimension above the conversion ceiling");
  const double s = point_scale(a.points());
  VecList gens;
  for (const Vec& p : a.points()) gens.push_back(lift(p / s, 1.0));
  for (const Vec& r : a.rec().generators()) gens.push_back(lift(r, 0.0));
  const ConeGenerators dual = enumerate_cone(q + 1, gens);
  std::vector<Halfspace> hs;
  for (const Vec& g : all_generators(dual)) {
    const Vec n = g.head(q);
    const double nn = n.norm();
    if (nn <= kTolHomog) continue;  // the t >= 0 face
    hs.push_back({n / nn, -g[q] * s / nn});
  }
  return hs;
}

UpperSet UpperSet::from_halfspaces(int dim, const std::vector<Halfspace>& hs) {
  require(dim >= 1, "upper set: dimension must be at least 1");
  if (dim + 1 > kMaxConversionDim)
    fail(ErrorKind::Unsupported, "upper set: dimension above the conversion ceiling");
  double s = 1.0;
  for (const auto& h : hs) {
    require(h.normal.size() == dim, "upper set: halfspace has wrong dimension");
    s = std::max(s, std::abs(h.offset) / std::max(h.normal.norm(), 1e-300));
  }
  VecList ineq;
  for (const auto& h : hs) {
    const double nn = h.normal.norm();
    require(nn > 0, "upper set: zero halfspace normal");
    ineq.push_back(lift(h.normal / nn, -h.offset / (nn * s)));
  }
  ineq.push_back(Vec::Unit(dim + 1, dim));
  const ConeGenerators g = enumerate_cone(dim + 1, ineq);

  VecList points, rays;
  for (const Vec& r : g.rays) {
    const double t = r[dim];
    if (t > kTolHomog) {
      points.push_back(s * r.head(dim) / t);
    } else {
      rays.push_back(r.head(dim));
    }
  }
  for (const Vec& l : g.lineality) {
    rays.push_back(l.head(dim));
    rays.push_back(-l.head(dim));
  }
  if (points.empty()) return empty(dim);
  VecList clean;
  for (const Vec& r : rays)
    if (r.norm() > kTolHomog) clean.push_back(r);
  return make(points, PolyCone::from_generators(dim, clean));
}

bool UpperSet::contains(const Vec& y, double tol) const {
  if (is_empty()) return false;
  return point_set_distance(y, *this).value <= tol;
}

PolyCone recession_cone(const UpperSet& a) {
  require(!a.is_empty(), "recession cone: set is empty");
  return a.rec();
}

UpperSet oplus(const UpperSet& a, const UpperSet& b) {
  require(a.dim() == b.dim(), "oplus: dimension mismatch");
  if (a.is_empty() || b.is_empty()) return UpperSet::empty(a.dim());
  VecList pts;
  for (const Vec& p : a.points())
    for (const Vec& r : b.points()) pts.push_back(p + r);
  VecList gens = a.rec().generators();
  gens.insert(gens.end(), b.rec().generators().begin(), b.rec().generators().end());
  return UpperSet::make(pts, PolyCone::from_generators(a.dim(), gens));
}

UpperSet odot(double alpha, const UpperSet& a, const PolyCone& order) {
  require(alpha >= 0.0, "odot: negative scalar");
  require(order.dim() == a.dim(), "odot: ordering cone dimension mismatch");
  if (a.is_empty()) return UpperSet::empty(a.dim());
  if (alpha == 0.0) return UpperSet::make({Vec::Zero(a.dim())}, order);
  VecList pts;
  for (const Vec& p : a.points()) pts.push_back(alpha * p);
  VecList gens = a.rec().generators();
  gens.insert(gens.end(), order.generators().begin(), order.generators().end());
  return UpperSet::make(pts, PolyCone::from_generators(a.dim(), gens));
}

UpperSet intersect(const UpperSet& a, const UpperSet& b) {
  require(a.dim() == b.dim(), "intersect: dimension mismatch");
  if (a.is_empty() || b.is_empty()) return UpperSet::empty(a.dim());
  std::vector<Halfspace> hs = a.halfspaces() ? *a.halfspaces() : compute_halfspaces(a);
  const std::vector<Halfspace> hb = b.halfspaces() ? *b.halfspaces() : compute_halfspaces(b);
  hs.insert(hs.end(), hb.begin(), hb.end());
  return UpperSet::from_halfspaces(a.dim(), hs);
}

SelfBoundedness is_self_bounded_set(const UpperSet& a) {
  require(!a.is_empty(), "self-boundedness: set is empty");
  const PolyCone& rec = a.rec();
  if (rec.is_full()) fail(ErrorKind::InvalidArgument, "self-boundedness: the set is all of R^q");
  const int q = a.dim();
  LinearProgram lp(q);
  Vec objective = Vec::Zero(q);
  for (const Vec& n : rec.normals()) {
    double rhs = std::numeric_limits<double>::infinity();
    for (const Vec& p : a.points()) rhs = std::min(rhs, n.dot(p));
    lp.add_le(n, rhs);
    objective += n;
  }
  lp.cost = -objective;  // tightest anchor: push y towards the points
  const LpResult r = solve_lp(lp);
  if (r.status == LpStatus::Infeasible) return {false, std::nullopt};
  if (r.status != LpStatus::Optimal)
    fail(ErrorKind::Numerical, std::string("self-boundedness LP: ") + to_string(r.status));
  return {true, r.x};
}

DistanceReport point_set_distance(const Vec& y, const UpperSet& a) {
  require(!a.is_empty(), "distance: set is empty");
  require(y.size() == a.dim(), "distance: dimension mismatch");
  const Projection p = project_onto_polyhedron(y, a.points(), a.rec().generators());
  DistanceReport r;
  r.value = p.distance;
  r.witness_from = y;
  r.witness_to = p.point;
  return r;
}

DistanceReport hausdorff(const UpperSet& a, const UpperSet& b) {
  require(a.dim() == b.dim(), "hausdorff: dimension mismatch");
  DistanceReport r;
  if (a.is_empty() && b.is_empty()) return r;
  if (a.is_empty() || b.is_empty()) {
    r.infinite = true;
    r.value = std::numeric_limits<double>::infinity();
    return r;
  }
  auto escaping = [](const PolyCone& from, const PolyCone& into) -> std::optional<Vec> {
    for (const Vec& g : from.generators())
      if (!into.contains(g, kTolCone * 100)) return g;
    return std::nullopt;
  };
  std::optional<Vec> dir = escaping(a.rec(), b.rec());
  const UpperSet* origin = &a;
  if (!dir) {
    dir = escaping(b.rec(), a.rec());
    origin = &b;
  }
  if (dir) {
    r.infinite = true;
    r.value = std::numeric_limits<double>::infinity();
    r.witness_from = origin->points().front();
    r.witness_to = origin->points().front() + *dir;
    r.direction = *dir;
    return r;
  }
  r.value = -1.0;
  auto sweep = [&r](const UpperSet& from, const UpperSet& to) {
    for (const Vec& v : from.points()) {
      const DistanceReport d = point_set_distance(v, to);
      if (d.value > r.value) r = d;
    }
  };
  sweep(a, b);
  sweep(b, a);
  return r;
}

DistanceReport hausdorff_sampled_lower_bound(const UpperSet& a, const UpperSet& b, int samples,
                                             unsigned seed, double radius) {
  require(!a.is_empty() && !b.is_empty(), "hausdorff sampling: empty operand");
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> ex(1.0);
  std::uniform_real_distribution<double> un(0.0, radius);
  DistanceReport best;
  best.value = 0.0;
  auto draw = [&](const UpperSet& s) {
    Vec bary(static_cast<Eigen::Index>(s.points().size()));
    for (Eigen::Index i = 0; i < bary.size(); ++i) bary[i] = ex(rng);
    bary /= bary.sum();
    Vec y = Vec::Zero(s.dim());
    for (Eigen::Index i = 0; i < bary.size(); ++i) y += bary[i] * s.points()[static_cast<size_t>(i)];
    for (const Vec& r : s.rec().generators()) y += un(rng) * r;
    return y;
  };
  for (int i = 0; i < samples; ++i) {
    const Vec ya = draw(a);
    DistanceReport d = point_set_distance(ya, b);
    if (d.value > best.value) best = d;
    const Vec yb = draw(b);
    d = point_set_distance(yb, a);
    if (d.value > best.value) best = d;
  }
  return best;
}

bool set_contains(const UpperSet& b, const UpperSet& a, double tol) {
  if (a.is_empty()) return true;
  if (b.is_empty()) return false;
  for (const Vec& p : a.points())
    if (point_set_distance(p, b).value > tol * (1.0 + p.norm())) return false;
  return b.rec().contains_cone(a.rec(), std::max(tol, kTolCone));
}

bool set_equal(const UpperSet& a, const UpperSet& b, double tol) {
  return set_contains(a, b, tol) && set_contains(b, a, tol);
}

VecList finite_dominating_subset(const VecList& samples, const PolyCone& k, const Vec& c,
                                 double eps) {
  if (samples.empty()) fail(ErrorKind::InvalidArgument, "dominating subset: no samples");
  require(eps > 0.0, "dominating subset: eps must be positive");
  require(k.is_solid() && !k.is_zero(), "dominating subset: K must be solid");
  for (const Vec& n : k.normals())
    require(n.dot(c.normalized()) > kTolCone, "dominating subset: c is not interior to K");

  size_t first = 0;
  for (size_t i = 1; i < samples.size(); ++i) {
    const double a = c.dot(samples[i]);
    const double b = c.dot(samples[first]);
    if (a < b || (a == b && lex_less(samples[i], samples[first]))) first = i;
  }
  VecList chosen{samples[first]};
  std::vector<bool> used(samples.size(), false);
  used[first] = true;
  for (size_t round = 0; round < samples.size(); ++round) {
    VecList shifted;
    for (const Vec& p : chosen) shifted.push_back(p - eps * c);
    double worst = kTolSet;
    int worst_idx = -1;
    for (size_t i = 0; i < samples.size(); ++i) {
      if (used[i]) continue;
      const double d = project_onto_polyhedron(samples[i], shifted, k.generators()).distance;
      if (d > worst) {
        worst = d;
        worst_idx = static_cast<int>(i);
      }
    }
    if (worst_idx < 0) break;
    used[static_cast<size_t>(worst_idx)] = true;
    chosen.push_back(samples[static_cast<size_t>(worst_idx)]);
  }
  return chosen;
}

}  // namespace cvop
