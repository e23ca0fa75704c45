// cvoptk: classify, solve and probe convex vector optimization problems.

#include "cvop/registry.hpp"
#include "cvop/report_io.hpp"
#include "cvop/setops.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>

using namespace cvop;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUnsettled = 2;

struct Common {
  std::string spec;
  std::string out;
  std::string csv;
  unsigned seed = 7;
};

struct Outputs {
  Json record = Json::object();
  Json paths = Json::object();
};

void emit(const Common& cm, const Json& payload, const std::string& csv_text, Outputs& o) {
  if (cm.out.empty()) {
    std::cout << dump(payload);
  } else {
    write_text_file(cm.out, dump(payload));
    o.paths["json"] = cm.out;
  }
  if (!cm.csv.empty()) {
    write_text_file(cm.csv, csv_text);
    o.paths["csv"] = cm.csv;
  }
}

LoadedProblem load(const Common& cm) {
  LoadedProblem lp = load_problem_file(cm.spec, cm.seed);
  const double viol = std::max(lp.convexity.max_violation_f, lp.convexity.max_violation_g);
  if (viol > 1e-8)
    std::fprintf(stderr,
                 "cvoptk: warning: objectives or constraints are not cone-convex on samples "
                 "(violation %.3g over %d trials); verdicts assume a convex upper image\n",
                 viol, lp.convexity.evaluated);
  return lp;
}

Json barrier_config(const BarrierOptions& b) {
  Json j;
  j["tol_gap"] = b.tol_gap;
  j["tol_kkt"] = b.tol_kkt;
  j["tol_feas"] = b.tol_feas;
  j["slope_tol"] = b.slope_tol;
  j["m_div"] = b.m_div;
  j["r_div"] = b.r_div;
  j["max_outer"] = b.max_outer;
  j["max_newton"] = b.max_newton;
  return j;
}

Vec parse_vec(const std::string& text, const std::string& what, int dim) {
  return vec_from_json(parse_json_text(text, what), what, dim);
}

PolyCone parse_cone(const std::string& text, const CvopProblem& prob) {
  if (text == "C") return prob.C();
  const Json j = parse_json_text(text, "--K");
  if (j.is_array()) return PolyCone::from_generators(prob.q(), veclist_from_json(j, "--K", prob.q()));
  return cone_from_json(j, "--K", prob.q());
}

int cmd_classify(const Common& cm, double resolution, Outputs& o) {
  const LoadedProblem lp = load(cm);
  ClassifyOptions opt;
  opt.resolution_deg = resolution;
  o.record["config"] = {{"resolution_deg", resolution},
                        {"bisect_tol_rad", opt.bisect_tol_rad},
                        {"seed", cm.seed},
                        {"barrier", barrier_config(opt.barrier)}};
  o.record["spec_hash"] = spec_hash(lp.spec);
  const BoundednessReport r = classify(*lp.problem, opt);
  emit(cm, to_json(r), r.w_estimate ? w_grid_csv(*r.w_estimate) : std::string(), o);
  std::fprintf(stderr, "cvoptk: %s\n", to_string(r.verdict));
  return r.verdict == Verdict::Undetermined ? kExitUnsettled : kExitOk;
}

int cmd_solve(const Common& cm, double eps, int budget, double resolution, const std::string& kmode,
              Outputs& o) {
  const LoadedProblem lp = load(cm);
  const CvopProblem& prob = *lp.problem;
  SandwichOptions opt;
  opt.eps = eps;
  opt.budget = budget;
  o.record["config"] = {{"eps", eps},         {"budget", budget}, {"resolution_deg", resolution},
                        {"K", kmode},         {"seed", cm.seed},  {"barrier", barrier_config(opt.barrier)}};
  o.record["spec_hash"] = spec_hash(lp.spec);

  PolyCone K = prob.C();
  if (kmode != "C") {
    ClassifyOptions copt;
    copt.resolution_deg = resolution;
    const BoundednessReport r = classify(prob, copt);
    std::fprintf(stderr, "cvoptk: classified %s\n", to_string(r.verdict));
    switch (r.verdict) {
      case Verdict::Undetermined:
        std::fprintf(stderr, "cvoptk: boundedness is undetermined; no ordering cone for the sandwich\n");
        return kExitUnsettled;
      case Verdict::NotSelfBounded:
        std::fprintf(stderr,
                     "cvoptk: the problem is not self-bounded: every finite solution set has "
                     "h(conv Y + K, P) = inf for the recession cone K, so no eps-solution exists\n");
        return kExitError;
      case Verdict::Bounded:
        K = kmode == "recc" ? r.recc_estimate : prob.C();
        break;
      case Verdict::SelfBoundedUnbounded:
        K = r.recc_estimate;
        break;
    }
  }
  const SandwichResult res = sandwich_solve(prob, K, opt);
  emit(cm, to_json(res), frontier_csv(res), o);
  std::fprintf(stderr, "cvoptk: %s, eps_certified %.6g with %zu weights\n", to_string(res.status),
               res.eps_certified, res.weight_log.size());
  return res.status == SandwichStatus::Certified ? kExitOk : kExitUnsettled;
}

int cmd_diverge(const Common& cm, const std::string& ktext, const std::string& ybar,
                const std::string& kbar, int n_max, Outputs& o) {
  const LoadedProblem lp = load(cm);
  const CvopProblem& prob = *lp.problem;
  const PolyCone K = parse_cone(ktext, prob);
  const Vec y = ybar.empty() ? Vec(Vec::Zero(prob.q())) : parse_vec(ybar, "--y-bar", prob.q());
  const Vec k = parse_vec(kbar, "--k-bar", prob.q());
  BarrierOptions bopt;
  o.record["config"] = {{"K", to_json(K)}, {"y_bar", to_json(y)}, {"k_bar", to_json(k)},
                        {"n_max", n_max},  {"seed", cm.seed},     {"barrier", barrier_config(bopt)}};
  o.record["spec_hash"] = spec_hash(lp.spec);
  const DivergenceTrace tr = divergence_demo(prob, K, y, k, n_max, bopt, cm.seed);
  emit(cm, to_json(tr), distances_csv(tr), o);
  std::fprintf(stderr, "cvoptk: %s\n", tr.note.c_str());
  return tr.contradiction ? kExitUnsettled : kExitOk;
}

int cmd_setops(const Common& cm, Outputs& o) {
  const Json j = read_json_file(cm.spec);
  const SetopsInput in = setops_from_json(j);
  o.record["config"] = {{"expr", in.expr}, {"seed", cm.seed}};
  const SetopsResult r = evaluate_setops(in.expr, in.sets, in.order);
  emit(cm, to_json(r), std::string(), o);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex vector optimization toolkit"};
  app.set_version_flag("--version", CVOP_VERSION);
  app.require_subcommand(1);

  Common cm;
  auto common = [&cm](CLI::App* sub, const char* what) {
    sub->add_option("spec", cm.spec, what)->required()->check(CLI::ExistingFile);
    sub->add_option("--out,-o", cm.out, "JSON output path (stdout when omitted)");
    sub->add_option("--csv", cm.csv, "CSV output path");
    sub->add_option("--seed", cm.seed, "seed for sampled checks")->capture_default_str();
  };

  double resolution = 1.0;
  double eps = 1e-2;
  int budget = 512;
  std::string kmode = "auto";
  std::string ktext;
  std::string ybar;
  std::string kbar;
  int n_max = 100;

  auto* classify_cmd = app.add_subcommand("classify", "decide boundedness and estimate recc P");
  common(classify_cmd, "problem JSON");
  classify_cmd->add_option("--resolution", resolution, "weight grid resolution in degrees")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* solve_cmd = app.add_subcommand("solve", "inner and outer approximation of the upper image");
  common(solve_cmd, "problem JSON");
  solve_cmd->add_option("--eps", eps, "target accuracy along c")->check(CLI::PositiveNumber)->capture_default_str();
  solve_cmd->add_option("--budget", budget, "maximum number of scalarizations")
      ->check(CLI::Range(2, 1 << 20))
      ->capture_default_str();
  solve_cmd->add_option("--resolution", resolution, "classifier resolution in degrees")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  solve_cmd->add_option("--K", kmode, "ordering cone for the sandwich")
      ->check(CLI::IsMember({"auto", "C", "recc"}))
      ->capture_default_str();

  auto* diverge_cmd = app.add_subcommand("diverge", "distances d(y_bar + n k_bar, P) for n = 1..n_max");
  common(diverge_cmd, "problem JSON");
  diverge_cmd->add_option("--K", ktext, "cone: \"C\", a generator list or a cone object")->required();
  diverge_cmd->add_option("--y-bar", ybar, "base point as a JSON array (default 0)");
  diverge_cmd->add_option("--k-bar", kbar, "direction in K as a JSON array")->required();
  diverge_cmd->add_option("--n-max", n_max, "last n")->check(CLI::Range(2, 100000))->capture_default_str();

  auto* setops_cmd = app.add_subcommand("setops", "evaluate an expression over upper sets");
  common(setops_cmd, "expression JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version exit 0; every usage error maps to the error code.
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  Outputs o;
  const auto start = std::chrono::steady_clock::now();
  int code = kExitError;
  std::string name;
  try {
    if (classify_cmd->parsed()) {
      name = "classify";
      code = cmd_classify(cm, resolution, o);
    } else if (solve_cmd->parsed()) {
      name = "solve";
      code = cmd_solve(cm, eps, budget, resolution, kmode, o);
    } else if (diverge_cmd->parsed()) {
      name = "diverge";
      code = cmd_diverge(cm, ktext, ybar, kbar, n_max, o);
    } else {
      name = "setops";
      code = cmd_setops(cm, o);
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "cvoptk: error: %s\n", e.what());
    return kExitError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "cvoptk: error: %s\n", e.what());
    return kExitError;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!cm.out.empty()) {
    Json rec;
    rec["schema"] = "cvop.run_record/v1";
    rec["spec_hash"] = o.record.contains("spec_hash") ? o.record["spec_hash"] : Json(nullptr);
    rec["command"] = name;
    rec["input"] = cm.spec;
    rec["config"] = o.record["config"];
    rec["outputs"] = o.paths;
    rec["exit_code"] = code;
    rec["wall_time_s"] = wall;
    rec["version"] = CVOP_VERSION;
    try {
      write_text_file(cm.out + ".run.json", dump(rec));
    } catch (const Error& e) {
      std::fprintf(stderr, "cvoptk: error: %s\n", e.what());
      return kExitError;
    }
  }
  return code;
}
