#pragma once

// JSON and CSV forms of classifier reports, sandwich results and divergence traces.

#include "cvop/classifier.hpp"
#include "cvop/json_io.hpp"
#include "cvop/sandwich.hpp"

namespace cvop {

Json to_json(const ScalarVerdict& v);
Json to_json(const WEstimate& est);
Json to_json(const BoundednessReport& r);
Json to_json(const SandwichResult& r);
Json to_json(const DivergenceTrace& t);

/// One row per grid direction: angle (q = 2 only), w, status, value.
std::string w_grid_csv(const WEstimate& est);
/// Inner points and outer vertices.
std::string frontier_csv(const SandwichResult& r);
std::string distances_csv(const DivergenceTrace& t);

}  // namespace cvop
