#pragma once

// Dense two-phase simplex for the small linear programs that show up in cone
// and upper-set calculus (feasibility of anchors, directional gaps, 𝒫⁰ points).

#include "cvop/types.hpp"

namespace cvop {

/// minimize cost^T x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x_j >= 0 where nonneg[j].
struct LinearProgram {
  Vec cost;
  Mat a_ub;
  Vec b_ub;
  Mat a_eq;
  Vec b_eq;
  std::vector<bool> nonneg;  // empty means every variable is free

  explicit LinearProgram(int num_vars);
  int num_vars() const { return static_cast<int>(cost.size()); }
  void add_le(const Vec& row, double rhs);
  void add_eq(const Vec& row, double rhs);
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpResult {
  LpStatus status = LpStatus::IterationLimit;
  Vec x;
  double value = 0.0;
};

LpResult solve_lp(const LinearProgram& lp);

const char* to_string(LpStatus s);

}  // namespace cvop
