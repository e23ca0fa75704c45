#include "doctest.h"

#include "cvop/projection.hpp"
#include "cvop/upper_set.hpp"
#include "random_sets.hpp"

#include <cmath>
#include <random>

using namespace cvop;

namespace {

const PolyCone& r2plus() {
  static const PolyCone k = PolyCone::orthant(2);
  return k;
}

PolyCone expon_cone() {
  return PolyCone::from_generators(2, {make_vec({1, 0}), make_vec({-std::exp(-1.0), 1})});
}

bool has_point(const UpperSet& a, const Vec& p, double tol = 1e-9) {
  for (const Vec& x : a.points())
    if ((x - p).norm() <= tol) return true;
  return false;
}

}  // namespace

TEST_CASE("recession_cone: examples") {
  CHECK(recession_cone(UpperSet::make({make_vec({0, 0})}, r2plus())).equals(r2plus()));
  const auto k = expon_cone();
  CHECK(recession_cone(UpperSet::make({make_vec({0, 1}), make_vec({1, 0})}, k)).equals(k));
  CHECK_THROWS_AS(recession_cone(UpperSet::empty(2)), Error);

  // rec(A ⊕ B) contains cl(rec A + rec B); sampled over directions of the sum.
  const auto ka = PolyCone::from_generators(2, {make_vec({1, 0}), make_vec({1, 1})});
  const auto a = UpperSet::make({make_vec({0, 0})}, ka);
  const auto b = UpperSet::make({make_vec({1, 1})}, r2plus());
  const auto s = oplus(a, b);
  CHECK(recession_cone(s).equals(r2plus()));
  for (int i = 0; i <= 90; ++i) {
    const double th = M_PI / 2 * i / 90.0;
    CHECK(recession_cone(s).contains(make_vec({std::cos(th), std::sin(th)})));
  }
}

TEST_CASE("oplus: examples") {
  const auto a = UpperSet::make({make_vec({0, 0})}, r2plus());
  const auto b = UpperSet::make({make_vec({1, 2})}, r2plus());
  CHECK(set_equal(oplus(a, b), b));

  const auto s1 = UpperSet::make({make_vec({0, 0}), make_vec({1, -1})}, r2plus());
  const auto s2 = UpperSet::make({make_vec({0, 0}), make_vec({-1, 1})}, r2plus());
  const auto sum = oplus(s1, s2);
  const auto expect =
      UpperSet::make({make_vec({0, 0}), make_vec({1, -1}), make_vec({-1, 1})}, r2plus());
  CHECK(set_equal(sum, expect));
  // (0,0) is the midpoint of (1,-1) and (-1,1), so it is dominated.
  CHECK(sum.points().size() == 2);

  CHECK(oplus(a, UpperSet::empty(2)).is_empty());
  CHECK(oplus(UpperSet::empty(2), a).is_empty());
}

TEST_CASE("oplus: {0}+C is neutral on random sets with rec = C") {
  std::mt19937 rng(5);
  const auto neutral = UpperSet::make({make_vec({0, 0})}, r2plus());
  std::uniform_real_distribution<double> u(-3, 3);
  for (int t = 0; t < 20; ++t) {
    VecList pts{make_vec({u(rng), u(rng)}), make_vec({u(rng), u(rng)})};
    const auto a = UpperSet::make(pts, r2plus());
    CHECK(set_equal(oplus(neutral, a), a));
  }
}

TEST_CASE("odot: examples") {
  const auto a = UpperSet::make({make_vec({0, 0}), make_vec({1, -1})}, r2plus());
  const auto zero = odot(0.0, a, r2plus());
  REQUIRE(zero.points().size() == 1);
  CHECK(zero.points()[0].norm() == 0.0);
  CHECK(zero.rec().equals(r2plus()));

  const auto one = UpperSet::make({make_vec({1, 1})}, r2plus());
  CHECK(set_equal(odot(1.0, one, r2plus()), one));

  const auto two = odot(2.0, a, r2plus());
  CHECK(set_equal(two, UpperSet::make({make_vec({0, 0}), make_vec({2, -2})}, r2plus())));
  CHECK_THROWS_AS(odot(-1.0, a, r2plus()), Error);
}

TEST_CASE("intersect: examples") {
  const auto a = UpperSet::make({make_vec({0, 0})}, r2plus());
  CHECK(set_equal(intersect(a, a), a));

  const auto b = UpperSet::make({make_vec({1, -1})}, r2plus());
  const auto ab = intersect(a, b);
  CHECK(set_equal(ab, UpperSet::make({make_vec({1, 0})}, r2plus())));
  CHECK(has_point(ab, make_vec({1, 0})));

  const auto e = UpperSet::make({make_vec({0, 0})}, expon_cone());
  CHECK(set_equal(intersect(e, a), a));

  // {y1 <= -1} ∩ {y1 >= 0} is empty; {-5 <= y1 <= -1, y2 >= 0} is not.
  CHECK(UpperSet::from_halfspaces(
            2, {{make_vec({-1, 0}), 1.0}, {make_vec({1, 0}), 0.0}, {make_vec({0, 1}), 0.0}})
            .is_empty());
  CHECK_FALSE(UpperSet::from_halfspaces(
                  2, {{make_vec({-1, 0}), 1.0}, {make_vec({0, 1}), 0.0}, {make_vec({1, 0}), -5.0}})
                  .is_empty());
}

TEST_CASE("halfspace round trip reproduces the set") {
  std::mt19937 rng(17);
  for (int t = 0; t < 40; ++t) {
    const int q = 2 + t % 2;
    const auto a = testing::random_upper_set(rng, q);
    REQUIRE(a.halfspaces());
    for (const Vec& p : a.points())
      for (const auto& h : *a.halfspaces()) CHECK(h.normal.dot(p) >= h.offset - 1e-7);
    const auto back = UpperSet::from_halfspaces(q, *a.halfspaces());
    CHECK(set_equal(back, a));
  }
}

TEST_CASE("is_self_bounded_set: examples") {
  auto r = is_self_bounded_set(UpperSet::make({make_vec({0, 0}), make_vec({1, 1})}, r2plus()));
  CHECK(r.self_bounded);
  REQUIRE(r.anchor);
  CHECK((*r.anchor - make_vec({0, 0})).norm() < 1e-9);

  const auto ray = PolyCone::from_generators(2, {make_vec({1, 0})});
  r = is_self_bounded_set(UpperSet::make({make_vec({0, 0}), make_vec({1, -1})}, ray));
  CHECK_FALSE(r.self_bounded);
  CHECK_FALSE(r.anchor);

  CHECK_THROWS_AS(is_self_bounded_set(UpperSet::make({make_vec({0, 0})}, PolyCone::full(2))), Error);
}

TEST_CASE("is_self_bounded_set: solid pointed rec is always self-bounded, anchor covers the base") {
  std::mt19937 rng(23);
  for (int t = 0; t < 40; ++t) {
    const int q = 2 + t % 2;
    const auto a = testing::random_upper_set(rng, q);
    const auto r = is_self_bounded_set(a);
    REQUIRE(r.self_bounded);
    const auto cone_at_anchor = UpperSet::make({*r.anchor}, a.rec());
    for (const Vec& p : a.points()) CHECK(cone_at_anchor.contains(p, 1e-9));
  }
}

TEST_CASE("point_set_distance: examples") {
  const auto o = UpperSet::make({make_vec({0, 0})}, r2plus());
  CHECK(point_set_distance(make_vec({1, 1}), o).value == doctest::Approx(0).epsilon(1e-12));
  const auto d = point_set_distance(make_vec({-1, -1}), o);
  CHECK(d.value == doctest::Approx(std::sqrt(2.0)));
  CHECK(d.witness_to.norm() < 1e-12);
  CHECK((d.witness_from - d.witness_to).norm() == doctest::Approx(d.value));
  const auto seg = UpperSet::make({make_vec({0, 0}), make_vec({0, 3})}, r2plus());
  CHECK(point_set_distance(make_vec({-2, 0}), seg).value == doctest::Approx(2));
}

TEST_CASE("hausdorff: examples") {
  const auto o = UpperSet::make({make_vec({0, 0})}, r2plus());
  CHECK(hausdorff(o, o).value == doctest::Approx(0).epsilon(1e-12));
  const auto t = UpperSet::make({make_vec({1, 1})}, r2plus());
  const auto h = hausdorff(o, t);
  CHECK_FALSE(h.infinite);
  CHECK(h.value == doctest::Approx(std::sqrt(2.0)));

  // Grid brute force: sup over sampled points of o of d(., t).
  double brute = 0.0;
  for (int i = 0; i <= 40; ++i)
    for (int j = 0; j <= 40; ++j) {
      const Vec y = make_vec({i * 0.1, j * 0.1});
      brute = std::max(brute, point_set_distance(y, t).value);
    }
  CHECK(brute == doctest::Approx(std::sqrt(2.0)));

  const auto e = UpperSet::make({make_vec({0, 0})}, expon_cone());
  const auto inf = hausdorff(o, e);
  CHECK(inf.infinite);
  REQUIRE(inf.direction);
  // Along the escaping direction the distance to R²₊ grows without bound.
  const Vec k = make_vec({-std::exp(-1.0), 1});
  double prev = 0.0;
  for (int n = 1; n <= 100; ++n) {
    const double d = point_set_distance(n * k, o).value;
    CHECK(d > prev);
    prev = d;
  }
}

TEST_CASE("hausdorff: sampled lower bound never exceeds the exact value") {
  std::mt19937 rng(29);
  for (int t = 0; t < 10; ++t) {
    const auto a = testing::random_upper_set(rng, 2);
    const auto b = UpperSet::make(a.points(), a.rec());
    const auto shifted = oplus(b, UpperSet::make({make_vec({0.3, 0.2})}, a.rec()));
    const auto exact = hausdorff(a, shifted);
    const auto lb = hausdorff_sampled_lower_bound(a, shifted, 50, 1);
    CHECK(lb.value <= exact.value + 1e-9);
  }
}

TEST_CASE("finite_dominating_subset: examples") {
  const Vec c = make_vec({1, 1});
  const VecList square{make_vec({0, 0}), make_vec({1, 0}), make_vec({0, 1}), make_vec({1, 1})};
  auto s = finite_dominating_subset(square, r2plus(), c, 0.1);
  REQUIRE(s.size() == 1);
  CHECK(s[0].norm() == 0.0);

  s = finite_dominating_subset({make_vec({0, 1}), make_vec({1, 0})}, r2plus(), c, 0.01);
  CHECK(s.size() == 2);

  s = finite_dominating_subset({make_vec({3, 4})}, r2plus(), c, 0.5);
  REQUIRE(s.size() == 1);
  CHECK((s[0] - make_vec({3, 4})).norm() == 0.0);
  CHECK_THROWS_AS(finite_dominating_subset({}, r2plus(), c, 0.1), Error);
}

TEST_CASE("finite_dominating_subset: outer/inner Hausdorff gap is at most eps·‖c‖") {
  std::mt19937 rng(31);
  std::normal_distribution<double> g(0, 1);
  for (int t = 0; t < 10; ++t) {
    VecList samples;
    for (int i = 0; i < 40; ++i) {
      const Vec v = make_vec({g(rng), g(rng)});
      samples.push_back(v.normalized());  // points on a circle
    }
    const Vec c = make_vec({1, 1});
    const double eps = 0.05;
    const auto chosen = finite_dominating_subset(samples, r2plus(), c, eps);
    VecList shifted;
    for (const Vec& p : chosen) shifted.push_back(p - eps * c);
    const auto outer = UpperSet::make(shifted, r2plus());
    const auto inner = UpperSet::make(chosen, r2plus());
    for (const Vec& s : samples) CHECK(outer.contains(s, 1e-7));
    CHECK(hausdorff(outer, inner).value <= eps * c.norm() + 1e-9);
  }
}

TEST_CASE("conlinear laws on random polyhedral upper sets") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> ua(0.1, 3.0);
  for (int t = 0; t < 30; ++t) {
    const int q = 2 + t % 2;
    const auto order = PolyCone::orthant(q);
    const auto a = testing::random_upper_set(rng, q);
    const auto b = testing::random_upper_set(rng, q);
    const auto c = testing::random_upper_set(rng, q);
    const double alpha = ua(rng);
    CHECK(set_equal(oplus(oplus(a, b), c), oplus(a, oplus(b, c))));
    CHECK(set_equal(oplus(a, b), oplus(b, a)));
    CHECK(set_equal(odot(1.0, a, order), a));
    CHECK(set_equal(odot(alpha, oplus(a, b), order),
                    oplus(odot(alpha, a, order), odot(alpha, b, order))));
  }
}

TEST_CASE("self-boundedness is preserved by oplus, odot and intersect") {
  std::mt19937 rng(43);
  for (int t = 0; t < 30; ++t) {
    const int q = 2 + t % 2;
    const auto order = PolyCone::orthant(q);
    const auto a = testing::random_upper_set(rng, q);
    const auto b = testing::random_upper_set(rng, q);
    REQUIRE(is_self_bounded_set(a).self_bounded);
    REQUIRE(is_self_bounded_set(b).self_bounded);
    CHECK(is_self_bounded_set(oplus(a, b)).self_bounded);
    CHECK(is_self_bounded_set(odot(0.7, a, order)).self_bounded);
    const auto ab = intersect(a, b);
    if (!ab.is_empty()) CHECK(is_self_bounded_set(ab).self_bounded);
  }
}

TEST_CASE("projection and pruning are scale free") {
  const VecList rays{make_vec({-2, 1}), make_vec({1, 0})};
  const Vec far = make_vec({5.7735e8, 6.5536e-12});
  const Vec near = make_vec({1.1e-11, 1.1e-11});
  const Projection p = project_onto_polyhedron(near, {far}, rays);
  CHECK(p.converged);
  // nearest point of far + cone{(-2,1),(1,0)} to the origin lies on the (-2,1) edge
  const double expect = far[0] / std::sqrt(5.0);
  CHECK(p.distance == doctest::Approx(expect).epsilon(1e-9));
  CHECK((far + p.ray_weights[0] * rays[0] + p.ray_weights[1] * rays[1] - p.point).norm() <= 1e-6 * far[0]);
  for (double s : {1e-6, 1.0, 1e6}) {
    const Projection q = project_onto_polyhedron(s * near, {s * far}, rays);
    CHECK(q.distance == doctest::Approx(s * expect).epsilon(1e-9));
  }
  // the near point survives; the far one is covered by it
  const UpperSet a = UpperSet::make({far, near}, PolyCone::from_generators(2, rays));
  REQUIRE(a.points().size() == 1);
  CHECK((a.points()[0] - near).norm() == 0.0);
}
