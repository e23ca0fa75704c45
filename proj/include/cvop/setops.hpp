#pragma once

// Expressions over named upper sets:
//   A + B, A ⊕ B      closed Minkowski sum
//   2 * A, 2 ⊙ A      scaling plus the order cone
//   A & B, A ∩ B      intersection
//   selfbounded(E)    (outermost only) self-boundedness check with anchor
// Precedence from loosest: ∩, ⊕, ⊙. Parentheses group.

#include "cvop/json_io.hpp"

#include <map>
#include <optional>

namespace cvop {

struct SetopsInput {
  PolyCone order;
  std::map<std::string, UpperSet> sets;
  std::string expr;
};

/// {"schema": "cvop.setops/v1", "order": cone, "sets": {name: upper set}, "expr": "..."}.
/// The order cone defaults to the orthant of the sets' dimension.
SetopsInput setops_from_json(const Json& j);

struct SetopsResult {
  std::optional<UpperSet> set;
  std::optional<SelfBoundedness> check;
  std::optional<UpperSet> checked;  // the set examined by selfbounded()
};

SetopsResult evaluate_setops(const std::string& expr, const std::map<std::string, UpperSet>& sets,
                             const PolyCone& order);

Json to_json(const SetopsResult& r);

}  // namespace cvop
