#pragma once

// Random polyhedral upper sets with rec ⊇ C = R^q_+, shared by unit and
// acceptance tests.

#include "cvop/upper_set.hpp"

#include <random>

namespace cvop::testing {

inline UpperSet random_upper_set(std::mt19937& rng, int q, int max_points = 4) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> tilt(0.0, 0.8);
  std::uniform_int_distribution<int> np(1, max_points);
  std::uniform_int_distribution<int> extra(0, 2);
  VecList pts;
  const int n = np(rng);
  for (int i = 0; i < n; ++i) {
    Vec p(q);
    for (int j = 0; j < q; ++j) p[j] = u(rng);
    pts.push_back(p);
  }
  VecList gens;
  for (int j = 0; j < q; ++j) gens.push_back(Vec::Unit(q, j));
  // Extra rays lean outside the orthant but stay in an open halfspace around
  // the all-ones axis, so the cone remains pointed and solid.
  const int ne = extra(rng);
  for (int i = 0; i < ne; ++i) {
    Vec r = Vec::Ones(q);
    const int k = static_cast<int>(rng() % static_cast<unsigned>(q));
    r[k] = -tilt(rng);
    gens.push_back(r);
  }
  return UpperSet::make(pts, PolyCone::from_generators(q, gens));
}

}  // namespace cvop::testing
