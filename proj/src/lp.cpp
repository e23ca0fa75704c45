#include "cvop/lp.hpp"

#include <cmath>
#include <limits>

namespace cvop {

LinearProgram::LinearProgram(int num_vars)
    : cost(Vec::Zero(num_vars)),
      a_ub(0, num_vars),
      b_ub(0),
      a_eq(0, num_vars),
      b_eq(0) {}

namespace {

void append_row(Mat& a, Vec& b, const Vec& row, double rhs) {
  const auto r = a.rows();
  a.conservativeResize(r + 1, a.cols());
  a.row(r) = row.transpose();
  b.conservativeResize(r + 1);
  b[r] = rhs;
}

// Tableau over standard form  min c^T z, A z = b, z >= 0, b >= 0.
class Tableau {
 public:
  Tableau(const Mat& a, const Vec& b, const Vec& c) : m_(a.rows()), n_(a.cols()), cost_(c) {
    // columns: [structural n | artificial m | rhs]
    t_ = Mat::Zero(m_ + 1, n_ + m_ + 1);
    t_.topLeftCorner(m_, n_) = a;
    t_.block(0, n_, m_, m_) = Mat::Identity(m_, m_);
    t_.block(0, n_ + m_, m_, 1) = b;
    basis_.resize(static_cast<size_t>(m_));
    for (Eigen::Index i = 0; i < m_; ++i) basis_[static_cast<size_t>(i)] = n_ + i;
    scale_ = std::max(1.0, a.cwiseAbs().maxCoeff() + (m_ > 0 ? b.cwiseAbs().maxCoeff() : 0.0));
  }

  LpStatus run(Vec& z) {
    const double tol = 1e-11 * scale_;
    // Phase 1: minimize the sum of artificials.
    t_.row(m_).setZero();
    for (Eigen::Index i = 0; i < m_; ++i) {
      t_.row(m_).head(n_) -= t_.row(i).head(n_);
      t_(m_, n_ + m_) -= t_(i, n_ + m_);
    }
    // The phase 1 objective is bounded below by zero, so a column without a
    // pivot row is numerical noise; the feasibility test below decides.
    if (!pivot_loop(n_ + m_, tol, true) && !unbounded_) return LpStatus::IterationLimit;
    unbounded_ = false;
    if (-t_(m_, n_ + m_) > 1e-9 * scale_) return LpStatus::Infeasible;

    // Drive artificials out of the basis where possible.
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (basis_[static_cast<size_t>(i)] < n_) continue;
      for (Eigen::Index j = 0; j < n_; ++j) {
        if (std::abs(t_(i, j)) > 1e-9) {
          pivot(i, j);
          break;
        }
      }
    }

    // Phase 2 on structural columns only.
    t_.row(m_).setZero();
    t_.row(m_).head(n_) = cost_.transpose();
    for (Eigen::Index i = 0; i < m_; ++i) {
      const auto bj = basis_[static_cast<size_t>(i)];
      const double cb = bj < n_ ? cost_[bj] : 0.0;
      if (cb != 0.0) t_.row(m_) -= cb * t_.row(i);
    }
    if (!pivot_loop(n_, tol)) return unbounded_ ? LpStatus::Unbounded : LpStatus::IterationLimit;

    z = Vec::Zero(n_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      const auto bj = basis_[static_cast<size_t>(i)];
      if (bj < n_) z[bj] = t_(i, n_ + m_);
    }
    return LpStatus::Optimal;
  }

 private:
  // Bland's rule; entering columns restricted to [0, ncols).
  bool pivot_loop(Eigen::Index ncols, double tol, bool phase1 = false) {
    const long max_iter = 200 * (m_ + n_ + 10);
    for (long it = 0; it < max_iter; ++it) {
      if (phase1 && -t_(m_, n_ + m_) <= 1e-13 * scale_) return true;
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < ncols; ++j) {
        if (t_(m_, j) < -tol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m_; ++i) {
        const double a = t_(i, enter);
        if (a > 1e-9) {
          const double ratio = t_(i, n_ + m_) / a;
          if (ratio < best - 1e-14 ||
              (ratio <= best + 1e-14 && leave >= 0 &&
               basis_[static_cast<size_t>(i)] < basis_[static_cast<size_t>(leave)])) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) {
        unbounded_ = true;
        return false;
      }
      pivot(leave, enter);
    }
    return false;
  }

  void pivot(Eigen::Index r, Eigen::Index c) {
    t_.row(r) /= t_(r, c);
    for (Eigen::Index i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[static_cast<size_t>(r)] = c;
    // rounding can push a basic value slightly below zero
    for (Eigen::Index i = 0; i < m_; ++i)
      if (t_(i, n_ + m_) < 0.0) t_(i, n_ + m_) = 0.0;
  }

  Eigen::Index m_, n_;
  Vec cost_;
  Mat t_;
  std::vector<Eigen::Index> basis_;
  double scale_ = 1.0;
  bool unbounded_ = false;
};

}  // namespace

void LinearProgram::add_le(const Vec& row, double rhs) { append_row(a_ub, b_ub, row, rhs); }
void LinearProgram::add_eq(const Vec& row, double rhs) { append_row(a_eq, b_eq, row, rhs); }

LpResult solve_lp(const LinearProgram& lp) {
  const int n = lp.num_vars();
  require(lp.a_ub.cols() == n && lp.a_eq.cols() == n, "LP: constraint width mismatch");

  // Split free variables, add slacks for <= rows.
  std::vector<int> pos(static_cast<size_t>(n)), neg(static_cast<size_t>(n), -1);
  int cols = 0;
  for (int j = 0; j < n; ++j) {
    pos[static_cast<size_t>(j)] = cols++;
    const bool nn = !lp.nonneg.empty() && lp.nonneg[static_cast<size_t>(j)];
    if (!nn) neg[static_cast<size_t>(j)] = cols++;
  }
  const auto mu = lp.a_ub.rows();
  const auto me = lp.a_eq.rows();
  const int slack0 = cols;
  cols += static_cast<int>(mu);

  Mat a = Mat::Zero(mu + me, cols);
  Vec b(mu + me);
  Vec c = Vec::Zero(cols);
  for (int j = 0; j < n; ++j) {
    const auto pj = pos[static_cast<size_t>(j)];
    const auto nj = neg[static_cast<size_t>(j)];
    c[pj] = lp.cost[j];
    if (nj >= 0) c[nj] = -lp.cost[j];
    for (Eigen::Index i = 0; i < mu; ++i) {
      a(i, pj) = lp.a_ub(i, j);
      if (nj >= 0) a(i, nj) = -lp.a_ub(i, j);
    }
    for (Eigen::Index i = 0; i < me; ++i) {
      a(mu + i, pj) = lp.a_eq(i, j);
      if (nj >= 0) a(mu + i, nj) = -lp.a_eq(i, j);
    }
  }
  for (Eigen::Index i = 0; i < mu; ++i) {
    a(i, slack0 + i) = 1.0;
    b[i] = lp.b_ub[i];
  }
  for (Eigen::Index i = 0; i < me; ++i) b[mu + i] = lp.b_eq[i];
  for (Eigen::Index i = 0; i < mu + me; ++i) {
    if (b[i] < 0) {
      a.row(i) *= -1.0;
      b[i] = -b[i];
    }
  }

  Tableau tab(a, b, c);
  Vec z;
  LpResult res;
  res.status = tab.run(z);
  if (res.status != LpStatus::Optimal) return res;
  res.x = Vec::Zero(n);
  for (int j = 0; j < n; ++j) {
    res.x[j] = z[pos[static_cast<size_t>(j)]];
    if (neg[static_cast<size_t>(j)] >= 0) res.x[j] -= z[neg[static_cast<size_t>(j)]];
  }
  res.value = lp.cost.dot(res.x);
  return res;
}

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration_limit";
  }
  return "unknown";
}

}  // namespace cvop
