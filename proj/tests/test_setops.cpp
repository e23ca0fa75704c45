#include "doctest.h"

#include "cvop/setops.hpp"

using namespace cvop;

namespace {

std::map<std::string, UpperSet> two_sets() {
  const PolyCone k = PolyCone::orthant(2);
  return {{"A", UpperSet::make({make_vec({1, 0}), make_vec({0, 1})}, k)},
          {"B", UpperSet::make({make_vec({2, 2})}, k)}};
}

}  // namespace

TEST_CASE("setops: zero times A is the order cone") {
  const auto sets = two_sets();
  const PolyCone k = PolyCone::orthant(2);
  for (const char* e : {"0 ⊙ A", "0 * A", "0*(A+B)"}) {
    const SetopsResult r = evaluate_setops(e, sets, k);
    REQUIRE(r.set);
    CHECK(set_equal(*r.set, UpperSet::make({make_vec({0, 0})}, k)));
  }
}

TEST_CASE("setops: precedence and the two spellings agree") {
  const auto sets = two_sets();
  const PolyCone k = PolyCone::orthant(2);
  const UpperSet a = sets.at("A");
  const UpperSet b = sets.at("B");
  const auto ascii = evaluate_setops("A + 2*B & B", sets, k);
  const auto uni = evaluate_setops("A ⊕ 2⊙B ∩ B", sets, k);
  const UpperSet expect = intersect(oplus(a, odot(2.0, b, k)), b);
  CHECK(set_equal(*ascii.set, expect));
  CHECK(set_equal(*uni.set, expect));
  const auto grouped = evaluate_setops("A + (2*B & B)", sets, k);
  CHECK(set_equal(*grouped.set, oplus(a, intersect(odot(2.0, b, k), b))));
}

TEST_CASE("setops: selfbounded") {
  const auto sets = two_sets();
  const auto r = evaluate_setops("selfbounded(A + B)", sets, PolyCone::orthant(2));
  CHECK_FALSE(r.set);
  REQUIRE(r.check);
  CHECK(r.check->self_bounded);
  REQUIRE(r.check->anchor);
  for (const Vec& p : r.checked->points()) CHECK((p - *r.check->anchor).minCoeff() >= -1e-9);
  const Json j = to_json(r);
  CHECK(j["self_bounded"] == true);
}

TEST_CASE("setops: errors carry the offset") {
  const auto sets = two_sets();
  const PolyCone k = PolyCone::orthant(2);
  auto msg = [&](const std::string& e) {
    try {
      evaluate_setops(e, sets, k);
    } catch (const Error& err) {
      return std::string(err.what());
    }
    return std::string();
  };
  CHECK(msg("A + Z").find("offset 4") != std::string::npos);
  CHECK(msg("A +").find("offset 3") != std::string::npos);
  CHECK(msg("(A").find("expected ')'") != std::string::npos);
  CHECK(msg("2 A").find("after a scalar") != std::string::npos);
  CHECK(msg("A + selfbounded(A)").find("outermost") != std::string::npos);
  CHECK(msg("A $ B").find("unexpected character") != std::string::npos);
}

TEST_CASE("setops: reading the input file") {
  const Json j = parse_json_text(R"({"schema": "cvop.setops/v1",
    "sets": {"A": {"points": [[1, 0]], "rec": {"generators": [[1, 0], [0, 1]]}}},
    "expr": "A + A"})", "inline");
  const SetopsInput in = setops_from_json(j);
  CHECK(in.order.dim() == 2);
  const auto r = evaluate_setops(in.expr, in.sets, in.order);
  CHECK(set_equal(*r.set, UpperSet::make({make_vec({2, 0})}, PolyCone::orthant(2))));
  Json bad = j;
  bad["extra"] = 1;
  CHECK_THROWS_AS(setops_from_json(bad), Error);
}
