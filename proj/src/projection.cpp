#include "cvop/projection.hpp"

#include <algorithm>
#include <cmath>

namespace cvop {

namespace {

// The active-set iteration proper; callers hand it y = 0 and points in a unit box.
Projection project_scaled(const Vec& y, const VecList& points, const VecList& rays) {
  const auto q = y.size();
  const int np = static_cast<int>(points.size());
  const int nr = static_cast<int>(rays.size());
  const int n = np + nr;

  Mat g(q, n);
  for (int i = 0; i < np; ++i) g.col(i) = points[static_cast<size_t>(i)];
  for (int j = 0; j < nr; ++j) g.col(np + j) = rays[static_cast<size_t>(j)];

  int start = 0;
  double best = (points[0] - y).squaredNorm();
  for (int i = 1; i < np; ++i) {
    const double d = (points[static_cast<size_t>(i)] - y).squaredNorm();
    if (d < best) {
      best = d;
      start = i;
    }
  }
  Vec z = Vec::Zero(n);
  z[start] = 1.0;
  std::vector<bool> free(static_cast<size_t>(n), false);
  free[static_cast<size_t>(start)] = true;

  const double scale = 1.0 + g.cwiseAbs().maxCoeff() + y.cwiseAbs().maxCoeff();
  Projection out;
  const int cap = 10 * n;
  int it = 0;
  for (; it < cap; ++it) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (free[static_cast<size_t>(i)]) idx.push_back(i);
    const int k = static_cast<int>(idx.size());
    bool has_point = false;
    Mat gf(q, k);
    for (int t = 0; t < k; ++t) {
      gf.col(t) = g.col(idx[static_cast<size_t>(t)]);
      if (idx[static_cast<size_t>(t)] < np) has_point = true;
    }
    Mat h = gf.transpose() * gf;
    h.diagonal().array() += 1e-14 * (1.0 + h.trace());
    const int dim = k + (has_point ? 1 : 0);
    Mat kkt = Mat::Zero(dim, dim);
    Vec rhs = Vec::Zero(dim);
    kkt.topLeftCorner(k, k) = h;
    rhs.head(k) = gf.transpose() * y;
    if (has_point) {
      for (int t = 0; t < k; ++t) {
        if (idx[static_cast<size_t>(t)] < np) {
          kkt(t, k) = 1.0;
          kkt(k, t) = 1.0;
        }
      }
      rhs[k] = 1.0;
    }
    const Vec sol = kkt.completeOrthogonalDecomposition().solve(rhs);

    Vec p(k);
    for (int t = 0; t < k; ++t) p[t] = sol[t] - z[idx[static_cast<size_t>(t)]];

    if (p.cwiseAbs().maxCoeff() <= 1e-13 * (1.0 + z.cwiseAbs().maxCoeff())) {
      const Vec grad = g.transpose() * (g * z - y);
      double nu = 0.0;
      int cnt = 0;
      for (int i : idx) {
        if (i < np) {
          nu += grad[i];
          ++cnt;
        }
      }
      if (cnt > 0) nu /= cnt;
      int release = -1;
      double worst = -1e-11 * scale * scale;
      for (int i = 0; i < n; ++i) {
        if (free[static_cast<size_t>(i)]) continue;
        const double eta = grad[i] - (i < np ? nu : 0.0);
        if (eta < worst) {
          worst = eta;
          release = i;
        }
      }
      if (release < 0) {
        out.converged = true;
        break;
      }
      free[static_cast<size_t>(release)] = true;
      continue;
    }

    double alpha = 1.0;
    int blocking = -1;
    for (int t = 0; t < k; ++t) {
      if (p[t] < 0) {
        const double ratio = -z[idx[static_cast<size_t>(t)]] / p[t];
        if (ratio < alpha) {
          alpha = ratio;
          blocking = idx[static_cast<size_t>(t)];
        }
      }
    }
    for (int t = 0; t < k; ++t) z[idx[static_cast<size_t>(t)]] += alpha * p[t];
    if (blocking >= 0) {
      z[blocking] = 0.0;
      free[static_cast<size_t>(blocking)] = false;
    }
  }

  for (int i = 0; i < n; ++i) z[i] = std::max(0.0, z[i]);
  const double s = z.head(np).sum();
  if (s > 0) z.head(np) /= s;
  out.iterations = it;
  out.point_weights = z.head(np);
  out.ray_weights = z.tail(nr);
  out.point = g * z;
  out.distance = (out.point - y).norm();
  return out;
}

}  // namespace

Projection project_onto_polyhedron(const Vec& y, const VecList& points, const VecList& rays) {
  require(!points.empty(), "projection: point list is empty");
  // Tolerances inside are absolute, so far-away points (1e8 and beyond) would
  // otherwise freeze the active set.
  double s = 0.0;
  for (const Vec& p : points) s = std::max(s, (p - y).lpNorm<Eigen::Infinity>());
  if (s == 0.0) s = 1.0;
  VecList pts;
  for (const Vec& p : points) pts.push_back((p - y) / s);
  VecList dirs;
  std::vector<double> len;
  for (const Vec& r : rays) {
    const double n = r.norm();
    len.push_back(n > 0 ? n : 1.0);
    dirs.push_back(r / len.back());
  }
  Projection out = project_scaled(Vec::Zero(y.size()), pts, dirs);
  for (size_t j = 0; j < rays.size(); ++j) out.ray_weights[static_cast<Eigen::Index>(j)] *= s / len[j];
  out.point = y + s * out.point;
  out.distance *= s;
  return out;
}

Projection project_onto_cone(const Vec& y, const VecList& rays) {
  return project_onto_polyhedron(y, VecList{Vec::Zero(y.size())}, rays);
}

}  // namespace cvop
