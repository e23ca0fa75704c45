#include "cvop/json_io.hpp"

#include <fstream>
#include <sstream>

namespace cvop {

void schema_error(const std::string& where, const std::string& what) {
  fail(ErrorKind::Schema, "schema: " + (where.empty() ? std::string("/") : where) + ": " + what);
}

const Json& require_field(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) schema_error(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) schema_error(where + "/" + key, "missing field");
  return *it;
}

Json to_json(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json to_json(const VecList& vs) {
  Json a = Json::array();
  for (const Vec& v : vs) a.push_back(to_json(v));
  return a;
}

Json to_json(const Mat& m) {
  Json a = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(to_json(Vec(m.row(r).transpose())));
  return a;
}

Json to_json(const PolyCone& k) {
  Json j;
  j["dim"] = k.dim();
  j["generators"] = to_json(k.generators());
  j["normals"] = to_json(k.normals());
  return j;
}

Json to_json(const UpperSet& a) {
  Json j;
  j["dim"] = a.dim();
  j["empty"] = a.is_empty();
  j["points"] = to_json(a.points());
  if (!a.is_empty()) j["rec"] = to_json(a.rec());
  if (a.halfspaces()) {
    Json hs = Json::array();
    for (const auto& h : *a.halfspaces()) hs.push_back({{"normal", to_json(h.normal)}, {"offset", h.offset}});
    j["halfspaces"] = hs;
  }
  return j;
}

Vec vec_from_json(const Json& j, const std::string& where, int expected_size) {
  if (!j.is_array()) schema_error(where, "expected an array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) schema_error(where + "/" + std::to_string(i), "expected a number");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  if (expected_size >= 0 && v.size() != expected_size)
    schema_error(where, "expected " + std::to_string(expected_size) + " entries, got " +
                            std::to_string(v.size()));
  return v;
}

VecList veclist_from_json(const Json& j, const std::string& where, int expected_dim) {
  if (!j.is_array()) schema_error(where, "expected an array of vectors");
  VecList out;
  for (size_t i = 0; i < j.size(); ++i) {
    out.push_back(vec_from_json(j[i], where + "/" + std::to_string(i), expected_dim));
    if (expected_dim < 0) expected_dim = static_cast<int>(out.back().size());
  }
  return out;
}

Mat mat_from_json(const Json& j, const std::string& where, int expected_cols) {
  const VecList rows = veclist_from_json(j, where, expected_cols);
  if (rows.empty()) return Mat(0, std::max(expected_cols, 0));
  Mat m(static_cast<Eigen::Index>(rows.size()), rows[0].size());
  for (size_t r = 0; r < rows.size(); ++r) m.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
  return m;
}

PolyCone cone_from_json(const Json& j, const std::string& where, int expected_dim) {
  if (!j.is_object()) schema_error(where, "expected a cone object");
  int dim = expected_dim;
  if (j.contains("dim")) {
    if (!j["dim"].is_number_integer()) schema_error(where + "/dim", "expected an integer");
    dim = j["dim"].get<int>();
    if (expected_dim >= 0 && dim != expected_dim)
      schema_error(where + "/dim", "expected dimension " + std::to_string(expected_dim));
  }
  const bool has_g = j.contains("generators"), has_n = j.contains("normals");
  if (!has_g && !has_n) schema_error(where, "cone needs \"generators\" or \"normals\"");
  const std::string key = has_g ? "generators" : "normals";
  const VecList vs = veclist_from_json(j[key], where + "/" + key, dim);
  if (dim < 0) {
    if (vs.empty()) schema_error(where, "empty cone list needs a \"dim\"");
    dim = static_cast<int>(vs[0].size());
  }
  if (dim < 1) schema_error(where, "dimension must be positive");
  for (size_t i = 0; i < vs.size(); ++i)
    if (vs[i].norm() == 0.0 || !vs[i].allFinite())
      schema_error(where + "/" + key + "/" + std::to_string(i), "zero or non-finite vector");
  try {
    return has_g ? PolyCone::from_generators(dim, vs) : PolyCone::from_normals(dim, vs);
  } catch (const Error& e) {
    schema_error(where, e.what());
  }
}

UpperSet upper_set_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an upper set object");
  if (j.contains("halfspaces") && !j.contains("points")) {
    const int dim = require_field(j, "dim", where).get<int>();
    std::vector<Halfspace> hs;
    const Json& arr = j["halfspaces"];
    if (!arr.is_array()) schema_error(where + "/halfspaces", "expected an array");
    for (size_t i = 0; i < arr.size(); ++i) {
      const std::string w = where + "/halfspaces/" + std::to_string(i);
      const Vec n = vec_from_json(require_field(arr[i], "normal", w), w + "/normal", dim);
      const Json& off = require_field(arr[i], "offset", w);
      if (!off.is_number()) schema_error(w + "/offset", "expected a number");
      if (n.norm() == 0.0) schema_error(w + "/normal", "zero normal");
      hs.push_back({n, off.get<double>()});
    }
    return UpperSet::from_halfspaces(dim, hs);
  }
  const Json& pts = require_field(j, "points", where);
  int dim = j.contains("dim") ? j["dim"].get<int>() : -1;
  const VecList points = veclist_from_json(pts, where + "/points", dim);
  if (dim < 0 && !points.empty()) dim = static_cast<int>(points[0].size());
  if (points.empty()) {
    if (dim < 1) schema_error(where, "empty set needs a \"dim\"");
    return UpperSet::empty(dim);
  }
  const PolyCone rec = cone_from_json(require_field(j, "rec", where), where + "/rec", dim);
  return UpperSet::make(points, rec);
}

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Translate the byte offset into line:column.
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ErrorKind::Schema, "schema: " + source + ":" + std::to_string(line) + ":" +
                                std::to_string(col) + ": invalid JSON");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + path);
  out << text;
}

namespace {

// -0.0 prints as "-0.0"; results differing only in that sign should not differ as text.
void clear_negative_zero(Json& j) {
  if (j.is_number_float()) {
    if (j.get<double>() == 0.0) j = 0.0;
  } else if (j.is_structured()) {
    for (Json& e : j) clear_negative_zero(e);
  }
}

}  // namespace

std::string dump(const Json& j) {
  Json c = j;
  clear_negative_zero(c);
  return c.dump(2) + "\n";
}

}  // namespace cvop
