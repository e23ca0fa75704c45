#include "doctest.h"

#include "cvop/lp.hpp"
#include "cvop/projection.hpp"

#include <cmath>
#include <random>

using namespace cvop;

TEST_CASE("lp: textbook maximization") {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18, x, y >= 0  ->  (2, 6), 36
  LinearProgram lp(2);
  lp.cost = make_vec({-3, -5});
  lp.nonneg = {true, true};
  lp.add_le(make_vec({1, 0}), 4);
  lp.add_le(make_vec({0, 2}), 12);
  lp.add_le(make_vec({3, 2}), 18);
  const auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == doctest::Approx(-36));
  CHECK(r.x[0] == doctest::Approx(2));
  CHECK(r.x[1] == doctest::Approx(6));
}

TEST_CASE("lp: free variables, equalities, infeasible and unbounded") {
  LinearProgram lp(2);
  lp.cost = make_vec({1, 1});
  lp.add_eq(make_vec({1, -1}), 3);
  lp.add_le(make_vec({-1, 0}), 1);  // x >= -1
  lp.add_le(make_vec({0, -1}), 5);  // y >= -5
  auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.x[0] == doctest::Approx(-1));
  CHECK(r.x[1] == doctest::Approx(-4));

  LinearProgram bad(1);
  bad.add_le(make_vec({1}), -1);
  bad.add_le(make_vec({-1}), -1);
  CHECK(solve_lp(bad).status == LpStatus::Infeasible);

  LinearProgram unb(1);
  unb.cost = make_vec({1});
  unb.add_le(make_vec({1}), 0);
  CHECK(solve_lp(unb).status == LpStatus::Unbounded);
}

TEST_CASE("projection: orthant and segment examples") {
  const VecList rays{make_vec({1, 0}), make_vec({0, 1})};
  auto p = project_onto_polyhedron(make_vec({-1, -1}), {make_vec({0, 0})}, rays);
  CHECK(p.converged);
  CHECK(p.distance == doctest::Approx(std::sqrt(2.0)));
  CHECK(p.point.norm() == doctest::Approx(0).epsilon(1e-12));

  p = project_onto_polyhedron(make_vec({-2, 0}), {make_vec({0, 0}), make_vec({0, 3})}, rays);
  CHECK(p.distance == doctest::Approx(2));

  p = project_onto_polyhedron(make_vec({1, 1}), {make_vec({0, 0})}, rays);
  CHECK(p.distance == doctest::Approx(0).epsilon(1e-12));
}

TEST_CASE("projection: agrees with a dense grid oracle on random 2-D sets") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 30; ++trial) {
    VecList pts;
    const int np = 1 + trial % 4;
    for (int i = 0; i < np; ++i) pts.push_back(make_vec({u(rng), u(rng)}));
    VecList rays{make_vec({1, 0}), make_vec({u(rng), 1.0})};
    const Vec y = make_vec({u(rng) * 2, u(rng) * 2});
    const auto p = project_onto_polyhedron(y, pts, rays);
    REQUIRE(p.converged);
    // Oracle: d(y, A) = max over unit u of (u^T y - support_A(u)), scanned on a
    // dense angle grid; directions with positive slope along a ray are skipped.
    double best = 0.0;
    const int steps = 200000;
    for (int s = 0; s < steps; ++s) {
      const double th = 2.0 * M_PI * s / steps;
      const Vec dir = make_vec({std::cos(th), std::sin(th)});
      if (dir.dot(rays[0]) > 0 || dir.dot(rays[1]) > 0) continue;
      double support = -1e300;
      for (const Vec& pt : pts) support = std::max(support, dir.dot(pt));
      best = std::max(best, dir.dot(y) - support);
    }
    CHECK(p.distance == doctest::Approx(best).epsilon(1e-4).scale(1.0));
  }
}
