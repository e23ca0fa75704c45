#include "cvop/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace cvop {

namespace {

Json opt_vec(const Vec& v) { return v.size() ? to_json(v) : Json(nullptr); }

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void csv_vec(std::ostringstream& os, const Vec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) os << ',' << num(v[i]);
}

}  // namespace

Json to_json(const ScalarVerdict& v) {
  Json j;
  j["w"] = to_json(v.w);
  j["status"] = to_string(v.status);
  j["value"] = v.value;
  j["argmin"] = opt_vec(v.argmin);
  j["image"] = opt_vec(v.image);
  j["ray"] = opt_vec(v.ray);
  j["trace"] = v.trace;
  j["kkt_residual"] = v.kkt_residual;
  j["gap"] = v.gap;
  j["newton_steps"] = v.newton_steps;
  j["m_div"] = v.m_div;
  j["r_div"] = v.r_div;
  return j;
}

Json to_json(const WEstimate& est) {
  Json j;
  j["resolution_deg"] = est.resolution_deg;
  j["bounded_dirs"] = to_json(est.bounded_dirs);
  j["divergent_dirs"] = to_json(est.divergent_dirs);
  j["undetermined_dirs"] = to_json(est.undetermined_dirs);
  j["cone_hull"] = to_json(est.cone_hull);
  return j;
}

Json to_json(const BoundednessReport& r) {
  Json j;
  j["schema"] = "cvop.boundedness_report/v1";
  j["verdict"] = to_string(r.verdict);
  j["resolution_deg"] = r.resolution_deg;
  j["note"] = r.note;
  j["recc_estimate"] = r.recc_estimate.dim() ? to_json(r.recc_estimate) : Json(nullptr);
  j["w_closure"] = r.w_closure.dim() ? to_json(r.w_closure) : Json(nullptr);
  j["anchor"] = r.anchor ? to_json(*r.anchor) : Json(nullptr);
  if (r.anchor_detail) {
    j["anchor_set"] = {{"weights", to_json(r.anchor_detail->weights)}, {"gamma", r.anchor_detail->gamma}};
  } else {
    j["anchor_set"] = nullptr;
  }
  Json b = Json::array();
  for (const BoundaryRay& br : r.boundary)
    b.push_back({{"direction", to_json(br.direction)},
                 {"status", to_string(br.status)},
                 {"how", br.how},
                 {"bracket_rad", br.bracket_rad},
                 {"limit_values", br.limit_values}});
  j["boundary"] = b;
  j["w_estimate"] = r.w_estimate ? to_json(*r.w_estimate) : Json(nullptr);
  Json ev = Json::array();
  for (const Evidence& e : r.evidence) {
    Json row = to_json(e.verdict);
    row["role"] = e.role;
    ev.push_back(row);
  }
  j["evidence"] = ev;
  return j;
}

Json to_json(const SandwichResult& r) {
  Json j;
  j["schema"] = "cvop.sandwich_result/v1";
  j["status"] = to_string(r.status);
  j["note"] = r.note;
  j["K_used"] = to_json(r.K_used);
  j["c"] = to_json(r.c);
  j["eps_requested"] = r.eps_requested;
  j["eps_certified"] = r.eps_certified;
  j["rounds"] = r.rounds;
  j["weak_minimizers"] = to_json(r.weak_minimizers);
  j["images"] = to_json(r.images);
  j["inner"] = to_json(r.inner);
  Json hs = Json::array();
  for (const Halfspace& h : r.halfspaces) hs.push_back({{"normal", to_json(h.normal)}, {"offset", h.offset}});
  j["outer"] = {{"halfspaces", hs}, {"vertices", to_json(r.outer.points())}};
  j["outer_shifted"] = to_json(r.outer_shifted);
  Json gaps = Json::array();
  for (const VertexGap& g : r.gaps) gaps.push_back({{"vertex", to_json(g.vertex)}, {"gap", g.gap}});
  j["vertex_gaps"] = gaps;
  Json log = Json::array();
  for (const WeightLogEntry& e : r.weight_log)
    log.push_back({{"w", to_json(e.w)}, {"status", to_string(e.status)}, {"value", e.value}, {"round", e.round}});
  j["weight_log"] = log;
  j["offender"] = r.offender ? to_json(*r.offender) : Json(nullptr);
  return j;
}

Json to_json(const DivergenceTrace& t) {
  Json j;
  j["schema"] = "cvop.divergence_trace/v1";
  j["K"] = to_json(t.K);
  j["y_bar"] = to_json(t.y_bar);
  j["k_bar"] = to_json(t.k_bar);
  Json d = Json::array();
  for (const auto& [n, dn] : t.distances) d.push_back({{"n", n}, {"d", dn}});
  j["distances"] = d;
  j["increasing_from"] = t.increasing_from;
  j["growth_ratio"] = std::isfinite(t.growth_ratio) ? Json(t.growth_ratio) : Json(nullptr);
  j["contradiction"] = t.contradiction;
  j["containment_samples"] = t.containment_samples;
  j["containment_violations"] = t.containment_violations;
  j["note"] = t.note;
  return j;
}

std::string w_grid_csv(const WEstimate& est) {
  std::ostringstream os;
  const Eigen::Index q = est.grid.empty() ? 0 : est.grid.front().size();
  if (q == 2) os << "angle_deg,";
  for (Eigen::Index i = 0; i < q; ++i) os << (i ? ",w" : "w") << i + 1;
  os << ",status,value\n";
  for (size_t k = 0; k < est.grid.size(); ++k) {
    const Vec& w = est.grid[k];
    if (q == 2) os << num(std::atan2(w[1], w[0]) * 180.0 / std::numbers::pi) << ',';
    std::ostringstream row;
    csv_vec(row, w);
    os << row.str().substr(1) << ',' << to_string(est.verdicts[k].status) << ','
       << num(est.verdicts[k].value) << '\n';
  }
  return os.str();
}

std::string frontier_csv(const SandwichResult& r) {
  std::ostringstream os;
  const Eigen::Index q = r.K_used.dim();
  os << "kind";
  for (Eigen::Index i = 0; i < q; ++i) os << ",y" << i + 1;
  os << '\n';
  for (const Vec& p : r.inner.points()) {
    os << "inner";
    csv_vec(os, p);
    os << '\n';
  }
  for (const Vec& p : r.outer.points()) {
    os << "outer";
    csv_vec(os, p);
    os << '\n';
  }
  return os.str();
}

std::string distances_csv(const DivergenceTrace& t) {
  std::ostringstream os;
  os << "n,d\n";
  for (const auto& [n, d] : t.distances) os << n << ',' << num(d) << '\n';
  return os.str();
}

}  // namespace cvop
