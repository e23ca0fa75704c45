#pragma once

// JSON conversions for vectors, cones and upper sets. Readers report the
// offending field as a JSON pointer ("/C/generators/1: ...").

#include "cvop/upper_set.hpp"

#include <json.hpp>

namespace cvop {

using Json = nlohmann::ordered_json;

Json to_json(const Vec& v);
Json to_json(const VecList& vs);
Json to_json(const Mat& m);  // list of rows
Json to_json(const PolyCone& k);
Json to_json(const UpperSet& a);

Vec vec_from_json(const Json& j, const std::string& where, int expected_size = -1);
VecList veclist_from_json(const Json& j, const std::string& where, int expected_dim = -1);
Mat mat_from_json(const Json& j, const std::string& where, int expected_cols = -1);
/// {"generators": [...]} or {"normals": [...]} plus a "dim" when the list is empty.
PolyCone cone_from_json(const Json& j, const std::string& where, int expected_dim = -1);
/// {"points": [...], "rec": cone} or {"halfspaces": [{"normal":..,"offset":..}], "dim": q}.
UpperSet upper_set_from_json(const Json& j, const std::string& where);

[[noreturn]] void schema_error(const std::string& where, const std::string& what);
const Json& require_field(const Json& obj, const std::string& key, const std::string& where);

/// Parses text, turning parse errors into schema errors with line and column.
Json parse_json_text(const std::string& text, const std::string& source);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace cvop
