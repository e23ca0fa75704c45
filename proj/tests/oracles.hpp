#pragma once

// Independent brute-force oracles shared by the test binaries.

#include "cvop/problem.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace cvop::testing {

// inf over a uniform 1-D grid.
inline double grid_min(const std::function<double(double)>& fn, double lo, double hi, int steps) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= steps; ++i) best = std::min(best, fn(lo + (hi - lo) * i / steps));
  return best;
}

// f(argmin) - f(x) in int C would falsify weak minimality.
inline bool dominated_by_sample(const CvopProblem& p, const Vec& fbar, const VecList& xs) {
  for (const Vec& x : xs) {
    const Vec diff = fbar - p.f().value(x);
    bool strictly = true;
    for (const Vec& nrm : p.C().normals()) strictly &= nrm.dot(diff) > 1e-9;
    if (strictly) return true;
  }
  return false;
}

}  // namespace cvop::testing
