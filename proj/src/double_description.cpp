#include "cvop/double_description.hpp"

#include <algorithm>
#include <cmath>

namespace cvop {

namespace {

// Tiny components are flushed so that canonical output does not depend on
// round-off noise around zero.
Vec flush(Vec v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) < 1e-15) v[i] = 0.0;
  return v;
}

VecList orthonormalize(const VecList& vs, int dim) {
  VecList out;
  for (const Vec& v : vs) {
    Vec u = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& b : out) u -= b.dot(u) * b;
    const double nrm = u.norm();
    if (nrm > 1e-9) out.push_back(u / nrm);
    if (static_cast<int>(out.size()) == dim) break;
  }
  return out;
}

Vec project_out(const Vec& v, const VecList& basis) {
  Vec u = v;
  for (const Vec& b : basis) u -= b.dot(u) * b;
  return u;
}

}  // namespace

int numerical_rank(const VecList& rows, int dim, double tol) {
  if (rows.empty()) return 0;
  Mat m(static_cast<Eigen::Index>(rows.size()), dim);
  for (size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  Eigen::ColPivHouseholderQR<Mat> qr(m);
  qr.setThreshold(tol);
  return static_cast<int>(qr.rank());
}

VecList canonical_directions(const VecList& vs, double tol) {
  VecList out;
  for (const Vec& v : vs) {
    const double nrm = v.norm();
    if (!(nrm > tol)) continue;
    Vec u = flush(v / nrm);
    bool dup = false;
    for (const Vec& w : out) {
      if ((w - u).norm() <= tol * 10) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(std::move(u));
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

ConeGenerators enumerate_cone(int dim, const VecList& inequalities, double tol) {
  require(dim >= 1, "double description: dimension must be positive");
  if (dim > kMaxConversionDim)
    fail(ErrorKind::Unsupported, "double description: dimension " + std::to_string(dim) +
                                     " exceeds the supported ceiling");

  VecList lin;
  for (int i = 0; i < dim; ++i) lin.push_back(Vec::Unit(dim, i));
  VecList rays;
  VecList seen;  // normalized constraints processed so far

  for (const Vec& raw : inequalities) {
    require(raw.size() == dim, "double description: inequality has wrong dimension");
    const double nrm = raw.norm();
    if (!(nrm > tol)) continue;  // 0 >= 0 is vacuous
    const Vec a = raw / nrm;
    seen.push_back(a);

    int pivot = -1;
    double best = tol;
    for (size_t i = 0; i < lin.size(); ++i) {
      const double s = std::abs(a.dot(lin[i]));
      if (s > best) {
        best = s;
        pivot = static_cast<int>(i);
      }
    }

    if (pivot >= 0) {
      Vec l0 = lin[static_cast<size_t>(pivot)];
      if (a.dot(l0) < 0) l0 = -l0;
      const double al0 = a.dot(l0);
      VecList new_lin;
      for (size_t i = 0; i < lin.size(); ++i) {
        if (static_cast<int>(i) == pivot) continue;
        new_lin.push_back(lin[i] - (a.dot(lin[i]) / al0) * l0);
      }
      new_lin = orthonormalize(new_lin, dim);
      VecList new_rays;
      for (const Vec& r : rays) new_rays.push_back(r - (a.dot(r) / al0) * l0);
      new_rays.push_back(l0);
      for (Vec& r : new_rays) r = project_out(r, new_lin);
      lin = std::move(new_lin);
      rays = canonical_directions(new_rays, tol);
      continue;
    }

    VecList pos, neg, next;
    for (const Vec& r : rays) {
      const double s = a.dot(r);
      if (s > tol) {
        pos.push_back(r);
        next.push_back(r);
      } else if (s < -tol) {
        neg.push_back(r);
      } else {
        next.push_back(r);
      }
    }
    const int target = dim - 1;
    for (const Vec& p : pos) {
      for (const Vec& n : neg) {
        Vec cand = a.dot(p) * n - a.dot(n) * p;
        cand = project_out(cand, lin);
        const double cn = cand.norm();
        if (!(cn > tol)) continue;
        cand /= cn;
        VecList active = lin;
        for (const Vec& s : seen)
          if (std::abs(s.dot(cand)) <= 1e3 * tol) active.push_back(s);
        if (numerical_rank(active, dim) >= target) next.push_back(cand);
      }
    }
    rays = canonical_directions(next, tol);
  }

  ConeGenerators out;
  out.rays = rays;
  out.lineality = lin;
  for (Vec& l : out.lineality) l = flush(l);
  return out;
}

VecList all_generators(const ConeGenerators& g) {
  VecList all = g.rays;
  for (const Vec& l : g.lineality) {
    all.push_back(l);
    all.push_back(-l);
  }
  return canonical_directions(all);
}

}  // namespace cvop
