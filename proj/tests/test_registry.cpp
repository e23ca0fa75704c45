#include "doctest.h"

#include "cvop/registry.hpp"

#include <cmath>
#include <filesystem>

using namespace cvop;

namespace {

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

bool mentions(const std::string& msg, const std::string& part) { return msg.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("load_problem: expon") {
  const LoadedProblem lp = load_problem(parse_json_text(R"({"kind":"builtin","name":"expon"})", "inline"));
  const CvopProblem& p = *lp.problem;
  CHECK(p.n() == 1);
  CHECK(p.q() == 2);
  CHECK(p.m() == 0);
  CHECK(std::isinf(p.lower()[0]));
  CHECK(std::isinf(p.upper()[0]));
  CHECK(p.C().contains(make_vec({1, 0})));
  CHECK(p.C().contains(make_vec({0, 1})));
  CHECK(lp.gradients.max_rel_error < 1e-6);
  CHECK(lp.convexity.max_violation_f <= 1e-9);
}

TEST_CASE("load_problem: hyperbola with a smaller cone") {
  const LoadedProblem lp = load_problem(parse_json_text(
      R"({"kind":"builtin","name":"hyperbola","C":{"generators":[[2,1],[1,2]]}})", "inline"));
  const CvopProblem& p = *lp.problem;
  CHECK(p.C().contains(make_vec({2, 1})));
  CHECK_FALSE(p.C().contains(make_vec({1, 0})));
  CHECK(p.lower()[0] >= 0.0);
  CHECK(p.x0()[0] > 0.0);
  // 2x - 1/x is concave: the objective is not C-convex for this C.
  CHECK(lp.convexity.max_violation_f > 1e-3);
}

TEST_CASE("load_problem: schema errors") {
  auto load_text = [](const std::string& t) { return [t] { load_problem(parse_json_text(t, "p.json")); }; };
  auto msg = error_of(load_text(R"({"kind":"builtin","name":"expon","C":{"generators":[[1,0],[0,0]]}})"));
  CHECK(mentions(msg, "/C/generators/1"));
  msg = error_of(load_text(R"({"kind":"builtin","name":"expon","colour":1})"));
  CHECK(mentions(msg, "/colour"));
  CHECK(mentions(msg, "unknown field"));
  msg = error_of(load_text(R"({"kind":"builtin","name":"nope"})"));
  CHECK(mentions(msg, "/name"));
  msg = error_of(load_text(R"({"kind":"builtin","name":"disk","params":{"radius":-1}})"));
  CHECK(mentions(msg, "radius"));
  msg = error_of(load_text(R"({"kind":"magic"})"));
  CHECK(mentions(msg, "/kind"));
  msg = error_of(load_text(R"({"name":"expon"})"));
  CHECK(mentions(msg, "/kind"));
  msg = error_of(load_text(R"({"kind":"builtin","name":"expon","schema":"cvop.problem/v2"})"));
  CHECK(mentions(msg, "/schema"));
  msg = error_of(load_text("{\n  \"kind\": \"builtin\",\n  \"name\": expon\n}"));
  CHECK(mentions(msg, "p.json:3:"));
  msg = error_of([] { load_problem_file("/nonexistent/problem.json"); });
  CHECK(mentions(msg, "/nonexistent/problem.json"));
}

TEST_CASE("verify_gradients: a wrong Jacobian aborts with its coordinate") {
  ProblemData d;
  d.name = "bad";
  d.f = std::make_shared<const VectorFunction>(
      2, 2, [](const Vec& x) { return make_vec({x[0] * x[0], x[1] * x[1]}); },
      [](const Vec& x) {
        Mat j = Mat::Zero(2, 2);
        j(0, 0) = 2 * x[0];
        j(1, 1) = 3 * x[1];  // should be 2 x1
        return j;
      },
      [](const Vec&, const Vec& l) {
        Mat h = Mat::Zero(2, 2);
        h(0, 0) = 2 * l[0];
        h(1, 1) = 2 * l[1];
        return h;
      });
  d.C = PolyCone::orthant(2);
  d.lower = make_vec({-1, -1});
  d.upper = make_vec({1, 1});
  d.x0 = make_vec({0.5, 0.5});
  const CvopProblem p(std::move(d));
  const std::string msg = error_of([&] { verify_gradients(p); });
  CHECK(mentions(msg, "component 1"));
  CHECK(mentions(msg, "coordinate 1"));
  CHECK(verify_gradients(builtin_problem("quad_bowl")).max_rel_error < 1e-5);
}

TEST_CASE("spec round trip on every fixture") {
  int seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(CVOP_FIXTURE_DIR)) {
    if (entry.path().extension() != ".json") continue;
    CAPTURE(entry.path().string());
    const ProblemSpec a = spec_from_json(read_json_file(entry.path().string()));
    const ProblemSpec b = spec_from_json(parse_json_text(dump(to_json(a)), "dump"));
    CHECK(a == b);
    CHECK(dump(to_json(a)) == dump(to_json(b)));
    CHECK(spec_hash(a) == spec_hash(b));
    CHECK(a.truth.has_value());
    CHECK_NOTHROW(load_problem(to_json(a)));
    ++seen;
  }
  CHECK(seen >= 10);
}

TEST_CASE("spec_hash separates different specs") {
  ProblemSpec a = spec_from_json(parse_json_text(R"({"kind":"builtin","name":"disk"})", "a"));
  ProblemSpec b = spec_from_json(parse_json_text(R"({"kind":"builtin","name":"disk","params":{"radius":2}})", "b"));
  CHECK(spec_hash(a) != spec_hash(b));
  CHECK(spec_hash(a).size() == 16);
}

TEST_CASE("builtin registry") {
  for (const std::string& name : builtin_names()) {
    CAPTURE(name);
    CHECK_NOTHROW(verify_gradients(builtin_problem(name)));
  }
}
