#pragma once

// Problem specifications: builtin objective families and linear problems,
// their JSON form, and materialization into CvopProblem.

#include "cvop/json_io.hpp"
#include "cvop/problem.hpp"

#include <optional>

namespace cvop {

/// Ground truth carried by fixtures; read by the test harness only.
struct AnalyticTruth {
  std::string verdict;      // empty when unknown
  VecList recc_generators;  // empty when unknown
  double tolerance_deg = 1.0;
};

struct ProblemSpec {
  std::string kind = "builtin";  // "builtin" | "lvop"
  std::string name;
  Json params = Json::object();  // builtin parameters
  // lvop: minimize P x  s.t.  A x <= b (w.r.t. D = R^m_+ unless D is given), lower <= x <= upper
  Mat P;
  Mat A;
  Vec b;
  std::optional<Vec> lower;
  std::optional<Vec> upper;
  std::optional<PolyCone> C;
  std::optional<PolyCone> D;
  // Cones as written in the input, so that serialization reproduces them exactly.
  Json C_json;
  Json D_json;
  std::optional<Vec> c;
  std::optional<AnalyticTruth> truth;
};

ProblemSpec spec_from_json(const Json& j);
Json to_json(const ProblemSpec& s);
bool operator==(const ProblemSpec& a, const ProblemSpec& b);

/// Names known to the builtin registry.
std::vector<std::string> builtin_names();

/// Builds the problem; Jacobians are checked against finite differences
/// (throws naming the offending component and coordinate).
CvopProblem build_problem(const ProblemSpec& spec);

struct LoadedProblem {
  ProblemSpec spec;
  std::shared_ptr<const CvopProblem> problem;
  ConvexityReport convexity;
  GradientReport gradients;
};

/// Throws (Numerical) naming the worst component and coordinate when a
/// Jacobian disagrees with central differences by more than 1e-5.
GradientReport verify_gradients(const CvopProblem& prob, unsigned seed = 7);

/// Schema validation, construction, gradient check and convexity diagnosis.
/// `seed` drives the sampled gradient and convexity checks.
LoadedProblem load_problem(const Json& j, unsigned seed = 7);
LoadedProblem load_problem_file(const std::string& path, unsigned seed = 7);

/// Convenience for code and tests: builtin by name with default parameters.
CvopProblem builtin_problem(const std::string& name, const Json& params = Json::object(),
                            const std::optional<PolyCone>& C = std::nullopt);

/// Deterministic 64-bit FNV-1a hash of the canonical JSON dump, as hex.
std::string spec_hash(const ProblemSpec& s);

}  // namespace cvop
