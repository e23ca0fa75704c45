#include "cvop/registry.hpp"

#include "cvop/lp.hpp"

#include <cmath>
#include <cstdio>
#include <algorithm>
#include <cstdint>
#include <limits>
#include <set>

namespace cvop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using FnPtr = std::shared_ptr<const VectorFunction>;

FnPtr make_fn(VectorFunction f) { return std::make_shared<const VectorFunction>(std::move(f)); }

double param_number(const Json& p, const std::string& key, double def) {
  if (!p.contains(key)) return def;
  if (!p[key].is_number()) schema_error("/params/" + key, "expected a number");
  return p[key].get<double>();
}

Vec param_vec(const Json& p, const std::string& key, const Vec& def, int size = -1) {
  if (!p.contains(key)) return def;
  return vec_from_json(p[key], "/params/" + key, size);
}

void check_params(const Json& p, const std::set<std::string>& allowed) {
  if (!p.is_object()) schema_error("/params", "expected an object");
  for (auto it = p.begin(); it != p.end(); ++it)
    if (!allowed.count(it.key())) schema_error("/params/" + it.key(), "unknown parameter");
}

FnPtr identity_fn(int n) { return make_fn(VectorFunction::affine(Mat::Identity(n, n), Vec::Zero(n))); }

// f(x) = (x, e^{-x}) on R.
ProblemData expon_data() {
  ProblemData d;
  d.name = "expon";
  d.f = make_fn(VectorFunction(
      1, 2, [](const Vec& x) { return make_vec({x[0], std::exp(-x[0])}); },
      [](const Vec& x) {
        Mat j(2, 1);
        j << 1.0, -std::exp(-x[0]);
        return j;
      },
      [](const Vec& x, const Vec& l) {
        Mat h(1, 1);
        h(0, 0) = l[1] == 0.0 ? 0.0 : l[1] * std::exp(-x[0]);
        return h;
      }));
  d.C = PolyCone::orthant(2);
  d.x0 = make_vec({0.0});
  d.sample_lower = make_vec({-10.0});
  d.sample_upper = make_vec({10.0});
  return d;
}

// f(x) = (x, 1/x) on (0, ∞).
ProblemData hyperbola_data() {
  ProblemData d;
  d.name = "hyperbola";
  d.f = make_fn(VectorFunction(
      1, 2,
      [](const Vec& x) {
        return x[0] > 0 ? make_vec({x[0], 1.0 / x[0]}) : make_vec({x[0], kInf});
      },
      [](const Vec& x) {
        Mat j(2, 1);
        j << 1.0, -1.0 / (x[0] * x[0]);
        return j;
      },
      [](const Vec& x, const Vec& l) {
        Mat h(1, 1);
        h(0, 0) = l[1] == 0.0 ? 0.0 : l[1] * 2.0 / (x[0] * x[0] * x[0]);
        return h;
      }));
  d.C = PolyCone::from_generators(2, {make_vec({2, 1}), make_vec({1, 2})});
  d.lower = make_vec({0.0});
  d.upper = make_vec({kInf});
  d.x0 = make_vec({1.0});
  d.sample_lower = make_vec({0.05});
  d.sample_upper = make_vec({20.0});
  return d;
}

// f = id on the disk ‖x - a‖ <= r.
ProblemData disk_data(const Json& p) {
  check_params(p, {"radius", "center"});
  const double r = param_number(p, "radius", 1.0);
  if (!(r > 0)) schema_error("/params/radius", "must be positive");
  const Vec a = param_vec(p, "center", Vec::Zero(2), 2);
  ProblemData d;
  d.name = "disk";
  d.f = identity_fn(2);
  d.g = make_fn(VectorFunction(
      2, 1, [a, r](const Vec& x) { return make_vec({(x - a).squaredNorm() - r * r}); },
      [a](const Vec& x) { return Mat(2.0 * (x - a).transpose()); },
      [](const Vec&, const Vec& l) { return Mat(2.0 * l[0] * Mat::Identity(2, 2)); }));
  d.C = PolyCone::orthant(2);
  d.D = PolyCone::orthant(1);
  d.x0 = a;
  d.sample_lower = a.array() - 1.5 * r;
  d.sample_upper = a.array() + 1.5 * r;
  return d;
}

// f = id on {x >= 0 : x1 + x2 >= 1}.
ProblemData simplex_linear_data() {
  ProblemData d;
  d.name = "simplex_linear";
  d.f = identity_fn(2);
  Mat a(1, 2);
  a << -1.0, -1.0;
  d.g = make_fn(VectorFunction::affine(a, make_vec({1.0})));
  d.C = PolyCone::orthant(2);
  d.D = PolyCone::orthant(1);
  d.lower = Vec::Zero(2);
  d.upper = Vec::Constant(2, kInf);
  d.x0 = make_vec({1.0, 1.0});
  d.sample_lower = Vec::Zero(2);
  d.sample_upper = Vec::Constant(2, 5.0);
  return d;
}

// f_i(x) = ½‖x - a_i‖² for the given centres.
ProblemData quad_bowl_data(const Json& p) {
  check_params(p, {"centers"});
  VecList centers{make_vec({1, 0}), make_vec({0, 1})};
  if (p.contains("centers")) centers = veclist_from_json(p["centers"], "/params/centers");
  if (centers.size() < 2) schema_error("/params/centers", "need at least two centres");
  const int q = static_cast<int>(centers.size());
  const int n = static_cast<int>(centers[0].size());
  ProblemData d;
  d.name = "quad_bowl";
  d.f = make_fn(VectorFunction(
      n, q,
      [centers, q](const Vec& x) {
        Vec f(q);
        for (int i = 0; i < q; ++i) f[i] = 0.5 * (x - centers[static_cast<size_t>(i)]).squaredNorm();
        return f;
      },
      [centers, q, n](const Vec& x) {
        Mat j(q, n);
        for (int i = 0; i < q; ++i) j.row(i) = (x - centers[static_cast<size_t>(i)]).transpose();
        return j;
      },
      [n](const Vec&, const Vec& l) { return Mat(l.sum() * Mat::Identity(n, n)); }));
  d.C = PolyCone::orthant(q);
  Vec lo = centers[0], hi = centers[0];
  for (const Vec& c : centers) {
    lo = lo.cwiseMin(c);
    hi = hi.cwiseMax(c);
  }
  d.x0 = 0.5 * (lo + hi);
  d.sample_lower = lo.array() - 3.0;
  d.sample_upper = hi.array() + 3.0;
  return d;
}

// A single feasible point: f = id, lower = upper = x.
ProblemData point_data(const Json& p) {
  check_params(p, {"x"});
  const Vec x = param_vec(p, "x", Vec::Zero(2));
  if (x.size() < 1) schema_error("/params/x", "empty point");
  ProblemData d;
  d.name = "point";
  const int n = static_cast<int>(x.size());
  d.f = identity_fn(n);
  d.C = PolyCone::orthant(n);
  d.lower = x;
  d.upper = x;
  d.x0 = x;
  d.sample_lower = x;
  d.sample_upper = x;
  return d;
}

// Chebyshev-style interior point of {A x <= b, lower <= x <= upper}: maximise
// the slack radius r (capped at 1 so the LP stays bounded).
Vec interior_point(const Mat& a, const Vec& b, const Vec& lo, const Vec& hi) {
  const int n = static_cast<int>(a.cols());
  LinearProgram lp(n + 1);
  lp.cost[n] = -1.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Vec row(n + 1);
    row << a.row(i).transpose(), a.row(i).norm();
    lp.add_le(row, b[i]);
  }
  for (int i = 0; i < n; ++i) {
    if (std::isfinite(lo[i])) {
      Vec row = Vec::Zero(n + 1);
      row[i] = -1.0;
      row[n] = 1.0;
      lp.add_le(row, -lo[i]);
    }
    if (std::isfinite(hi[i])) {
      Vec row = Vec::Zero(n + 1);
      row[i] = 1.0;
      row[n] = 1.0;
      lp.add_le(row, hi[i]);
    }
  }
  Vec cap = Vec::Zero(n + 1);
  cap[n] = 1.0;
  lp.add_le(cap, 1.0);
  const LpResult r = solve_lp(lp);
  if (r.status != LpStatus::Optimal) schema_error("/A", std::string("feasible region: ") + to_string(r.status));
  if (r.x[n] <= 1e-9) schema_error("/A", "feasible region has empty interior");
  return r.x.head(n);
}

ProblemData lvop_data(const ProblemSpec& s) {
  const int q = static_cast<int>(s.P.rows());
  const int n = static_cast<int>(s.P.cols());
  if (q < 1 || n < 1) schema_error("/P", "objective matrix must be nonempty");
  ProblemData d;
  d.name = s.name.empty() ? "lvop" : s.name;
  d.f = make_fn(VectorFunction::affine(s.P, Vec::Zero(q)));
  d.lower = s.lower.value_or(Vec::Constant(n, -kInf));
  d.upper = s.upper.value_or(Vec::Constant(n, kInf));
  if (s.A.rows() > 0) {
    if (s.A.cols() != n) schema_error("/A", "column count must match P");
    if (s.b.size() != s.A.rows()) schema_error("/b", "length must match the rows of A");
    d.g = make_fn(VectorFunction::affine(s.A, -s.b));
    d.D = s.D.value_or(PolyCone::orthant(static_cast<int>(s.A.rows())));
  }
  d.C = PolyCone::orthant(q);
  d.x0 = interior_point(s.A.rows() > 0 ? s.A : Mat(0, n), s.A.rows() > 0 ? s.b : Vec(), d.lower, d.upper);
  d.sample_lower = d.lower.cwiseMax(Vec(d.x0.array() - 10.0));
  d.sample_upper = d.upper.cwiseMin(Vec(d.x0.array() + 10.0));
  return d;
}

ProblemData builtin_data(const std::string& name, const Json& params) {
  if (name == "expon") {
    check_params(params, {});
    return expon_data();
  }
  if (name == "hyperbola") {
    check_params(params, {});
    return hyperbola_data();
  }
  if (name == "disk") return disk_data(params);
  if (name == "simplex_linear") {
    check_params(params, {});
    return simplex_linear_data();
  }
  if (name == "quad_bowl") return quad_bowl_data(params);
  if (name == "point") return point_data(params);
  schema_error("/name", "unknown builtin \"" + name + "\"");
}

Json truth_to_json(const AnalyticTruth& t) {
  Json j;
  if (!t.verdict.empty()) j["verdict"] = t.verdict;
  if (!t.recc_generators.empty()) j["recc_generators"] = to_json(t.recc_generators);
  j["tolerance_deg"] = t.tolerance_deg;
  return j;
}

bool same_vec(const Vec& a, const Vec& b) { return a.size() == b.size() && (a.size() == 0 || a == b); }

bool same_opt_vec(const std::optional<Vec>& a, const std::optional<Vec>& b) {
  return a.has_value() == b.has_value() && (!a || same_vec(*a, *b));
}

bool same_opt_cone(const std::optional<PolyCone>& a, const std::optional<PolyCone>& b) {
  return a.has_value() == b.has_value() && (!a || a->equals(*b));
}

bool same_mat(const Mat& a, const Mat& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.size() == 0 || a == b);
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"expon", "hyperbola", "disk", "simplex_linear", "quad_bowl", "point"};
}

ProblemSpec spec_from_json(const Json& j) {
  if (!j.is_object()) schema_error("", "expected an object");
  static const std::set<std::string> keys{"schema", "kind", "name", "params", "P", "A", "b",
                                          "lower", "upper", "C", "D", "c", "analytic_truth"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!keys.count(it.key())) schema_error("/" + it.key(), "unknown field");
  if (j.contains("schema") && j["schema"] != "cvop.problem/v1")
    schema_error("/schema", "unsupported schema version");
  ProblemSpec s;
  const Json& kind = require_field(j, "kind", "");
  if (!kind.is_string() || (kind != "builtin" && kind != "lvop"))
    schema_error("/kind", "expected \"builtin\" or \"lvop\"");
  s.kind = kind.get<std::string>();
  if (j.contains("name")) {
    if (!j["name"].is_string()) schema_error("/name", "expected a string");
    s.name = j["name"].get<std::string>();
  }
  if (s.kind == "builtin") {
    if (s.name.empty()) schema_error("/name", "builtin problems need a name");
    const auto names = builtin_names();
    if (std::find(names.begin(), names.end(), s.name) == names.end())
      schema_error("/name", "unknown builtin \"" + s.name + "\"");
    if (j.contains("params")) {
      if (!j["params"].is_object()) schema_error("/params", "expected an object");
      s.params = j["params"];
    }
    for (const char* k : {"P", "A", "b", "lower", "upper", "D"})
      if (j.contains(k)) schema_error(std::string("/") + k, "only valid for lvop problems");
  } else {
    if (j.contains("params")) schema_error("/params", "only valid for builtin problems");
    s.P = mat_from_json(require_field(j, "P", ""), "/P");
    const int n = static_cast<int>(s.P.cols());
    if (s.P.rows() < 1 || n < 1) schema_error("/P", "objective matrix must be nonempty");
    if (j.contains("A")) s.A = mat_from_json(j["A"], "/A", n);
    else s.A = Mat(0, n);
    if (j.contains("b")) s.b = vec_from_json(j["b"], "/b", static_cast<int>(s.A.rows()));
    else if (s.A.rows() > 0) schema_error("/b", "missing field");
    auto bound = [&](const char* key) {
      Vec v = vec_from_json(j[key], std::string("/") + key, n);
      for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(v[i]) >= 1e308) v[i] = std::copysign(std::numeric_limits<double>::infinity(), v[i]);
      return v;
    };
    if (j.contains("lower")) s.lower = bound("lower");
    if (j.contains("upper")) s.upper = bound("upper");
    if (j.contains("D")) {
      s.D = cone_from_json(j["D"], "/D", static_cast<int>(s.A.rows()));
      s.D_json = j["D"];
    }
  }
  if (j.contains("C")) {
    s.C = cone_from_json(j["C"], "/C");
    s.C_json = j["C"];
  }
  if (j.contains("c")) s.c = vec_from_json(j["c"], "/c");
  if (j.contains("analytic_truth")) {
    const Json& t = j["analytic_truth"];
    if (!t.is_object()) schema_error("/analytic_truth", "expected an object");
    AnalyticTruth at;
    if (t.contains("verdict")) {
      static const std::set<std::string> verdicts{"BOUNDED", "SELF_BOUNDED_UNBOUNDED",
                                                  "NOT_SELF_BOUNDED", "UNDETERMINED"};
      if (!t["verdict"].is_string() || !verdicts.count(t["verdict"].get<std::string>()))
        schema_error("/analytic_truth/verdict", "unknown verdict");
      at.verdict = t["verdict"].get<std::string>();
    }
    if (t.contains("recc_generators"))
      at.recc_generators = veclist_from_json(t["recc_generators"], "/analytic_truth/recc_generators");
    if (t.contains("tolerance_deg")) {
      if (!t["tolerance_deg"].is_number()) schema_error("/analytic_truth/tolerance_deg", "expected a number");
      at.tolerance_deg = t["tolerance_deg"].get<double>();
    }
    s.truth = at;
  }
  return s;
}

Json to_json(const ProblemSpec& s) {
  Json j;
  j["schema"] = "cvop.problem/v1";
  j["kind"] = s.kind;
  if (!s.name.empty()) j["name"] = s.name;
  if (s.kind == "builtin") {
    if (!s.params.empty()) j["params"] = s.params;
  } else {
    j["P"] = to_json(s.P);
    if (s.A.rows() > 0) {
      j["A"] = to_json(s.A);
      j["b"] = to_json(s.b);
    }
    // Infinite bounds have no JSON literal; they are written as ±1e308 sentinels.
    auto bound = [](const Vec& v) {
      Json a = Json::array();
      for (Eigen::Index i = 0; i < v.size(); ++i)
        a.push_back(std::isfinite(v[i]) ? v[i] : (v[i] > 0 ? 1e308 : -1e308));
      return a;
    };
    if (s.lower) j["lower"] = bound(*s.lower);
    if (s.upper) j["upper"] = bound(*s.upper);
    if (s.D) j["D"] = s.D_json.is_null() ? Json{{"dim", s.D->dim()}, {"generators", to_json(s.D->generators())}} : s.D_json;
  }
  if (s.C) j["C"] = s.C_json.is_null() ? Json{{"dim", s.C->dim()}, {"generators", to_json(s.C->generators())}} : s.C_json;
  if (s.c) j["c"] = to_json(*s.c);
  if (s.truth) j["analytic_truth"] = truth_to_json(*s.truth);
  return j;
}

bool operator==(const ProblemSpec& a, const ProblemSpec& b) {
  const bool truth_eq =
      a.truth.has_value() == b.truth.has_value() &&
      (!a.truth || (a.truth->verdict == b.truth->verdict &&
                    a.truth->tolerance_deg == b.truth->tolerance_deg &&
                    a.truth->recc_generators.size() == b.truth->recc_generators.size() &&
                    std::equal(a.truth->recc_generators.begin(), a.truth->recc_generators.end(),
                               b.truth->recc_generators.begin(), same_vec)));
  return a.kind == b.kind && a.name == b.name && a.params == b.params && same_mat(a.P, b.P) &&
         same_mat(a.A, b.A) && same_vec(a.b, b.b) && same_opt_vec(a.lower, b.lower) &&
         same_opt_vec(a.upper, b.upper) && same_opt_cone(a.C, b.C) && same_opt_cone(a.D, b.D) &&
         same_opt_vec(a.c, b.c) && truth_eq;
}

CvopProblem build_problem(const ProblemSpec& spec) {
  ProblemData d;
  if (spec.kind == "builtin") {
    d = builtin_data(spec.name, spec.params);
  } else {
    ProblemSpec s = spec;
    auto clamp = [](Vec& v) {
      for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(v[i]) >= 1e308) v[i] = v[i] > 0 ? kInf : -kInf;
    };
    if (s.lower) clamp(*s.lower);
    if (s.upper) clamp(*s.upper);
    d = lvop_data(s);
  }
  if (spec.C) {
    if (spec.C->dim() != d.f->out_dim()) schema_error("/C", "dimension must match the objective");
    d.C = *spec.C;
  }
  if (!d.C.is_pointed() || !d.C.is_solid()) schema_error("/C", "ordering cone must be pointed and solid");
  if (spec.c) {
    if (spec.c->size() != d.f->out_dim()) schema_error("/c", "dimension must match the objective");
    d.c = *spec.c;
  }
  try {
    return CvopProblem(std::move(d));
  } catch (const Error& e) {
    schema_error("", e.what());
  }
}

GradientReport verify_gradients(const CvopProblem& prob, unsigned seed) {
  const GradientReport g = check_gradients(prob, 50, seed);
  if (g.max_rel_error > 1e-5) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "gradient check failed: component %d, coordinate %d, relative error %.3g",
                  g.worst_component, g.worst_coordinate, g.max_rel_error);
    fail(ErrorKind::Numerical, buf);
  }
  return g;
}

LoadedProblem load_problem(const Json& j, unsigned seed) {
  LoadedProblem lp;
  lp.spec = spec_from_json(j);
  lp.problem = std::make_shared<const CvopProblem>(build_problem(lp.spec));
  lp.gradients = verify_gradients(*lp.problem, seed);
  lp.convexity = check_convexity(*lp.problem, 200, seed);
  return lp;
}

LoadedProblem load_problem_file(const std::string& path, unsigned seed) {
  return load_problem(read_json_file(path), seed);
}

CvopProblem builtin_problem(const std::string& name, const Json& params,
                            const std::optional<PolyCone>& C) {
  ProblemSpec s;
  s.kind = "builtin";
  s.name = name;
  s.params = params.is_null() ? Json::object() : params;
  s.C = C;
  return build_problem(s);
}

std::string spec_hash(const ProblemSpec& s) {
  const std::string text = to_json(s).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace cvop
