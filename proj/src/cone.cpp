#include "cvop/cone.hpp"

#include "cvop/double_description.hpp"
#include "cvop/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cvop {

namespace {

// Drops rays that are nonnegative combinations of the remaining generators.
VecList prune_redundant(const ConeGenerators& g) {
  VecList kept = g.rays;
  for (size_t i = 0; i < kept.size();) {
    VecList others;
    for (size_t j = 0; j < kept.size(); ++j)
      if (j != i) others.push_back(kept[j]);
    for (const Vec& l : g.lineality) {
      others.push_back(l);
      others.push_back(-l);
    }
    if (!others.empty() && project_onto_cone(kept[i], others).distance <= kTolCone) {
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  ConeGenerators reduced{kept, g.lineality};
  return all_generators(reduced);
}

void check_vectors(int dim, const VecList& vs, const char* what) {
  require(dim >= 1, "cone: dimension must be at least 1");
  for (const Vec& v : vs) {
    require(v.size() == dim, std::string("cone: ") + what + " has wrong dimension");
    require(v.allFinite(), std::string("cone: ") + what + " is not finite");
    require(v.norm() > kTolCone, std::string("cone: zero ") + what + " rejected");
  }
}

double angle_between(const Vec& a, const Vec& b) {
  const double cosv = std::clamp(a.normalized().dot(b.normalized()), -1.0, 1.0);
  return std::acos(cosv);
}

}  // namespace

PolyCone::PolyCone(int dim, VecList gens, VecList normals, bool pointed, bool solid)
    : dim_(dim),
      generators_(std::move(gens)),
      normals_(std::move(normals)),
      pointed_(pointed),
      solid_(solid) {}

PolyCone PolyCone::from_generators(int dim, const VecList& generators) {
  check_vectors(dim, generators, "generator");
  const ConeGenerators dual = enumerate_cone(dim, generators);
  VecList normals = prune_redundant(dual);
  const ConeGenerators primal = enumerate_cone(dim, normals);
  VecList gens = prune_redundant(primal);
  return PolyCone(dim, std::move(gens), std::move(normals), primal.lineality.empty(),
                  dual.lineality.empty());
}

PolyCone PolyCone::from_normals(int dim, const VecList& normals) {
  check_vectors(dim, normals, "normal");
  const ConeGenerators primal = enumerate_cone(dim, normals);
  VecList gens = prune_redundant(primal);
  const ConeGenerators dual = enumerate_cone(dim, gens);
  VecList norms = prune_redundant(dual);
  return PolyCone(dim, std::move(gens), std::move(norms), primal.lineality.empty(),
                  dual.lineality.empty());
}

PolyCone PolyCone::orthant(int dim) {
  VecList e;
  for (int i = 0; i < dim; ++i) e.push_back(Vec::Unit(dim, i));
  return from_generators(dim, e);
}

PolyCone PolyCone::zero(int dim) { return from_generators(dim, {}); }

PolyCone PolyCone::full(int dim) { return from_normals(dim, {}); }

bool PolyCone::contains(const Vec& y, double tol) const {
  require(y.size() == dim_, "cone membership: dimension mismatch");
  const double nrm = y.norm();
  if (nrm == 0.0) return true;
  const Vec u = y / nrm;
  for (const Vec& n : normals_)
    if (n.dot(u) < -tol) return false;
  return true;
}

bool PolyCone::contains_cone(const PolyCone& other, double tol) const {
  for (const Vec& g : other.generators())
    if (!contains(g, tol)) return false;
  return true;
}

bool PolyCone::equals(const PolyCone& other, double tol) const {
  return dim_ == other.dim_ && contains_cone(other, tol) && other.contains_cone(*this, tol);
}

Vec PolyCone::interior_direction() const {
  require(!generators_.empty(), "cone: the zero cone has no interior direction");
  Vec s = Vec::Zero(dim_);
  for (const Vec& g : generators_) s += g;
  require(s.norm() > kTolCone, "cone: generators sum to zero (cone not pointed)");
  return s.normalized();
}

PolyCone dual_cone(const PolyCone& k) {
  require(k.dim() >= 1, "dual cone: dimension must be at least 1");
  return PolyCone::from_generators(k.dim(), k.normals());
}

VecList extreme_directions(const PolyCone& k) {
  if (!k.is_pointed()) fail(ErrorKind::InvalidArgument, "extreme directions: cone contains a line");
  return k.generators();
}

bool contains(const PolyCone& k, const Vec& y, double tol) { return k.contains(y, tol); }

WeightBase weight_base(const PolyCone& k, const Vec& c, int points_per_edge) {
  require(c.size() == k.dim(), "weight base: c has wrong dimension");
  if (k.is_zero())
    fail(ErrorKind::InvalidArgument, "weight base: cone is {0}, the base is empty");
  require(points_per_edge >= 2, "weight base: need at least two points per edge");
  const VecList ext = extreme_directions(k);
  VecList verts;
  for (const Vec& e : ext) {
    const double s = e.dot(c);
    require(s > kTolCone, "weight base: c is not interior to the dual of the cone");
    verts.push_back(e / s);
  }

  WeightBase base{k, c, {}};
  const int q = k.dim();
  const int nseg = points_per_edge - 1;
  auto push_unique = [&](const Vec& w) {
    for (const Vec& v : base.weights)
      if ((v - w).norm() <= 1e-12 * (1.0 + v.norm())) return;
    base.weights.push_back(w);
  };

  if (verts.size() == 1) {
    base.weights.push_back(verts[0]);
  } else if (verts.size() == 2) {
    for (int i = 0; i <= nseg; ++i) {
      const double t = static_cast<double>(i) / nseg;
      push_unique((1.0 - t) * verts[0] + t * verts[1]);
    }
  } else if (q == 3) {
    // Order the base polygon around its centroid, then fan-triangulate.
    Vec centroid = Vec::Zero(q);
    for (const Vec& v : verts) centroid += v;
    centroid /= static_cast<double>(verts.size());
    const Vec n = c.normalized();
    Vec u = verts[0] - centroid;
    u -= n.dot(u) * n;
    u.normalize();
    const Eigen::Vector3d w3 = Eigen::Vector3d(n[0], n[1], n[2]).cross(Eigen::Vector3d(u[0], u[1], u[2]));
    const Vec w = w3;
    std::vector<std::pair<double, Vec>> ordered;
    for (const Vec& v : verts) {
      const Vec d = v - centroid;
      ordered.emplace_back(std::atan2(w.dot(d), u.dot(d)), v);
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const Vec& v : verts) push_unique(v);
    for (size_t t = 1; t + 1 < ordered.size(); ++t) {
      const Vec& a = ordered[0].second;
      const Vec& b = ordered[t].second;
      const Vec& d = ordered[t + 1].second;
      for (int i = 0; i <= nseg; ++i)
        for (int j = 0; i + j <= nseg; ++j) {
          const int l = nseg - i - j;
          push_unique((i * a + j * b + l * d) / static_cast<double>(nseg));
        }
    }
  } else {
    for (const Vec& v : verts) push_unique(v);
    Vec centroid = Vec::Zero(q);
    for (const Vec& v : verts) centroid += v;
    push_unique(centroid / static_cast<double>(verts.size()));
  }
  return base;
}

double angular_distance(const Vec& u, const VecList& vs) {
  double best = std::numbers::pi;
  for (const Vec& v : vs) best = std::min(best, angle_between(u, v));
  return best;
}

double angular_mismatch(const VecList& a, const VecList& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numbers::pi;
  double worst = 0.0;
  for (const Vec& u : a) worst = std::max(worst, angular_distance(u, b));
  for (const Vec& v : b) worst = std::max(worst, angular_distance(v, a));
  return worst;
}

double angle_to_cone(const Vec& u, const PolyCone& k) {
  if (k.contains(u)) return 0.0;
  if (k.generators().empty()) return std::numbers::pi / 2;
  const Projection p = project_onto_cone(u, k.generators());
  const double pn = p.point.norm();
  if (pn <= 1e-14 * u.norm()) return std::numbers::pi / 2;
  return std::acos(std::clamp(u.dot(p.point) / (u.norm() * pn), -1.0, 1.0));
}

double cone_angular_distance(const PolyCone& a, const PolyCone& b) {
  double worst = 0.0;
  for (const Vec& g : a.generators()) worst = std::max(worst, angle_to_cone(g, b));
  for (const Vec& g : b.generators()) worst = std::max(worst, angle_to_cone(g, a));
  return worst;
}

}  // namespace cvop
