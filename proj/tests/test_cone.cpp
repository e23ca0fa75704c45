#include "doctest.h"

#include "cvop/cone.hpp"
#include "cvop/double_description.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace cvop;

namespace {

bool same_dirs(const VecList& a, const VecList& b, double tol = 1e-9) {
  return angular_mismatch(a, b) <= tol;
}

// Independent oracle: dense membership scan. z is in K⁺ iff z^T y >= 0 for all
// sampled y in K; y sampled as nonnegative combinations of K's input generators.
bool dual_by_sampling(const VecList& k_gens, const Vec& z) {
  const int steps = 200;
  for (size_t a = 0; a < k_gens.size(); ++a)
    for (size_t b = 0; b < k_gens.size(); ++b)
      for (int s = 0; s <= steps; ++s) {
        const double t = static_cast<double>(s) / steps;
        const Vec y = (1 - t) * k_gens[a] + t * k_gens[b];
        if (z.dot(y) < -1e-12) return false;
      }
  return true;
}

}  // namespace

TEST_CASE("dual_cone: orthant is self-dual") {
  const auto k = PolyCone::orthant(2);
  CHECK(same_dirs(dual_cone(k).generators(), k.generators()));
}

TEST_CASE("dual_cone: cone{(1,0),(1,1)} -> cone{(0,1),(1,-1)} (sampled oracle)") {
  const VecList gens{make_vec({1, 0}), make_vec({1, 1})};
  const auto d = dual_cone(PolyCone::from_generators(2, gens));
  const VecList expect{make_vec({0, 1}), make_vec({1, -1})};
  CHECK(same_dirs(d.generators(), canonical_directions(expect)));
  // Sampled oracle over a grid of directions: membership in d agrees with the
  // brute-force dual test everywhere away from the boundary.
  for (int s = 0; s < 720; ++s) {
    const double th = 2 * M_PI * (s + 0.5) / 720;
    const Vec z = make_vec({std::cos(th), std::sin(th)});
    CHECK(d.contains(z) == dual_by_sampling(gens, z));
  }
}

TEST_CASE("dual_cone: halfspace cone {w1 >= 0} -> ray (1,0)") {
  const auto h = PolyCone::from_normals(2, {make_vec({1, 0})});
  CHECK_FALSE(h.is_pointed());
  CHECK(h.is_solid());
  const auto d = dual_cone(h);
  CHECK(same_dirs(d.generators(), {make_vec({1, 0})}));
  CHECK_FALSE(d.is_solid());
  for (int s = 0; s < 360; ++s) {
    const double th = 2 * M_PI * (s + 0.5) / 360;
    const Vec z = make_vec({std::cos(th), std::sin(th)});
    CHECK(d.contains(z) == dual_by_sampling(h.generators(), z));
  }
}

TEST_CASE("dual_cone: rejects zero generators") {
  CHECK_THROWS_AS(PolyCone::from_generators(2, {make_vec({0, 0})}), Error);
  CHECK_THROWS_AS(PolyCone::from_generators(0, {}), Error);
}

TEST_CASE("contains: examples") {
  const auto o = PolyCone::orthant(2);
  CHECK(o.contains(make_vec({1, 1}), 1e-9));
  CHECK_FALSE(o.contains(make_vec({-1, 1}), 1e-9));
  // alpha (1,0) + beta (-1/e, 1) = (-2, e^2): beta = e^2, alpha = e - 2 > 0.
  const auto k = PolyCone::from_generators(2, {make_vec({1, 0}), make_vec({-std::exp(-1.0), 1})});
  CHECK(k.contains(make_vec({-2, std::exp(2.0)})));
}

TEST_CASE("extreme_directions: examples") {
  CHECK(same_dirs(extreme_directions(PolyCone::orthant(2)), {make_vec({0, 1}), make_vec({1, 0})}));
  const auto k = PolyCone::from_generators(2, {make_vec({0, 1}), make_vec({1, -1}), make_vec({1, 0})});
  const auto ext = extreme_directions(k);
  REQUIRE(ext.size() == 2);
  CHECK(same_dirs(ext, {make_vec({0, 1}), make_vec({1, -1}) / std::sqrt(2.0)}));
  CHECK(lex_less(ext[0], ext[1]));
  CHECK(extreme_directions(PolyCone::orthant(3)).size() == 3);
  CHECK_THROWS_AS(extreme_directions(PolyCone::from_normals(2, {make_vec({1, 0})})), Error);
}

TEST_CASE("weight_base: examples") {
  const Vec c = make_vec({1, 1});
  auto b = weight_base(PolyCone::orthant(2), c, 2);
  CHECK(same_dirs(b.weights, {make_vec({1, 0}), make_vec({0, 1})}));
  b = weight_base(PolyCone::orthant(2), c, 3);
  REQUIRE(b.weights.size() == 3);
  bool has_mid = false;
  for (const Vec& w : b.weights) has_mid |= (w - make_vec({0.5, 0.5})).norm() < 1e-12;
  CHECK(has_mid);

  const auto k = PolyCone::from_generators(2, {make_vec({0, 1}), make_vec({1, -1})});
  b = weight_base(k, make_vec({2, 1}), 2);
  REQUIRE(b.weights.size() == 2);
  for (const Vec& w : b.weights) {
    const bool ok = (w - make_vec({0, 1})).norm() < 1e-12 || (w - make_vec({1, -1})).norm() < 1e-12;
    CHECK(ok);
  }
  CHECK_THROWS_AS(weight_base(PolyCone::zero(2), c, 2), Error);
}

TEST_CASE("weight_base: every element lies in K and on the c-hyperplane") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int t = 0; t < 20; ++t) {
    VecList gens{make_vec({u(rng), u(rng), u(rng)}), make_vec({u(rng), u(rng), u(rng)}),
                 make_vec({u(rng), u(rng), u(rng)}), make_vec({u(rng), u(rng), u(rng)})};
    const auto k = PolyCone::from_generators(3, gens);
    const Vec c = make_vec({1, 1, 1});
    const auto b = weight_base(k, c, 5);
    CHECK(b.weights.size() >= k.generators().size());
    for (const Vec& w : b.weights) {
      CHECK(std::abs(w.dot(c) - 1.0) <= kTolBase);
      CHECK(k.contains(w));
    }
  }
}

TEST_CASE("properties: duality involution, order reversal, extreme directions reproduce K") {
  std::mt19937 rng(3);
  std::normal_distribution<double> g(0, 1);
  for (int q = 2; q <= 3; ++q) {
    for (int t = 0; t < 40; ++t) {
      // Random pointed solid cone: perturbations of a common axis.
      const Vec axis = Vec::Ones(q).normalized();
      VecList gens;
      const int ng = q + 1 + t % 4;
      for (int i = 0; i < ng; ++i) {
        Vec v(q);
        for (int j = 0; j < q; ++j) v[j] = g(rng);
        gens.push_back((axis + 0.6 * v.normalized()).eval());
      }
      const auto k = PolyCone::from_generators(q, gens);
      REQUIRE(k.is_pointed());
      const auto dd = dual_cone(dual_cone(k));
      CHECK(dd.contains_cone(k, 1e-8));
      CHECK(k.contains_cone(dd, 1e-8));
      for (const Vec& v : gens) CHECK(k.contains(v, 1e-8));

      const auto ext = PolyCone::from_generators(q, extreme_directions(k));
      CHECK(ext.contains_cone(PolyCone::from_generators(q, gens), 1e-8));
      CHECK(k.contains_cone(ext, 1e-8));

      // K1 = cone of a subset is inside K; duals reverse the inclusion.
      VecList sub(gens.begin(), gens.begin() + q);
      const auto k1 = PolyCone::from_generators(q, sub);
      REQUIRE(k.contains_cone(k1, 1e-8));
      CHECK(dual_cone(k1).contains_cone(dual_cone(k), 1e-8));
    }
  }
}

TEST_CASE("canonical form is deterministic") {
  const auto a = PolyCone::from_generators(2, {make_vec({2, 1}), make_vec({1, 2}), make_vec({3, 3})});
  const auto b = PolyCone::from_generators(2, {make_vec({1, 2}), make_vec({2, 1})});
  REQUIRE(a.generators().size() == b.generators().size());
  for (size_t i = 0; i < a.generators().size(); ++i)
    CHECK((a.generators()[i] - b.generators()[i]).norm() == 0.0);
}

TEST_CASE("angle_to_cone and cone_angular_distance") {
  const double pi = std::numbers::pi;
  const auto orth = PolyCone::orthant(2);
  CHECK(angle_to_cone(make_vec({1, 1}), orth) == 0.0);
  CHECK(angle_to_cone(make_vec({1, -1}), orth) == doctest::Approx(pi / 4));
  CHECK(angle_to_cone(make_vec({-1, -1}), orth) == doctest::Approx(pi / 2));
  const auto narrow = PolyCone::from_generators(2, {make_vec({2, 1}), make_vec({1, 2})});
  CHECK(cone_angular_distance(orth, narrow) == doctest::Approx(std::atan(0.5)));
  CHECK(cone_angular_distance(orth, orth) == 0.0);
  // an extra generator close to a face costs its distance to that face only
  const auto o3 = PolyCone::orthant(3);
  const auto bent = PolyCone::from_generators(
      3, {make_vec({1, 0, 0}), make_vec({0, 1, 0}), make_vec({0, 0, 1}), make_vec({1, 1, -0.01})});
  CHECK(cone_angular_distance(o3, bent) == doctest::Approx(std::atan(0.01 / std::sqrt(2.0))).epsilon(1e-6));
  CHECK(angular_mismatch(o3.generators(), bent.generators()) > 0.5);
}
