#pragma once

// Inner and outer polyhedral approximations of the upper image built from
// weighted-sum scalarizations, and the divergence demonstration for problems
// that are not self-bounded.

#include "cvop/scalar.hpp"

#include <optional>

namespace cvop {

enum class SandwichStatus { Certified, Uncertified, Divergent, MaxIter };
const char* to_string(SandwichStatus s);

struct WeightLogEntry {
  Vec w;  // scaled to w^T c = 1
  ScalarStatus status;
  double value;
  int round;
};

struct VertexGap {
  Vec vertex;
  double gap;  // min t with vertex + t·c in inner (0 when inside)
};

struct SandwichOptions {
  double eps = 1e-2;
  int budget = 512;
  std::optional<Vec> c;  // defaults to the problem's c
  /// q = 3: samples per base edge; 0 picks the largest grid within the budget.
  int grid_points_per_edge = 0;
  BarrierOptions barrier;
};

struct SandwichResult {
  SandwichStatus status = SandwichStatus::Uncertified;
  PolyCone K_used;
  Vec c;
  double eps_requested = 0.0;
  double eps_certified = 0.0;
  VecList weak_minimizers;
  VecList images;
  UpperSet inner;                     // conv f(X̄) + K
  std::vector<Halfspace> halfspaces;  // outer = ∩ {w^T y >= γ^w}
  UpperSet outer;
  UpperSet outer_shifted;             // inner - eps_certified·c
  std::vector<WeightLogEntry> weight_log;
  std::vector<VertexGap> gaps;
  int rounds = 0;
  /// Divergent or MaxIter runs: the scalarization that stopped the run.
  std::optional<ScalarVerdict> offender;
  std::string note;
};

/// Directional gap min{t : v + t·c in a}; negative when v is interior.
double directional_gap(const Vec& v, const UpperSet& a, const Vec& c);

SandwichResult sandwich_solve(const CvopProblem& prob, const PolyCone& K,
                              const SandwichOptions& opt = {});

/// ∩_{w in base} {y : w^T y >= γ^w}. Throws when a base weight is not bounded.
UpperSet initial_outer(const CvopProblem& prob, const WeightBase& base,
                       const BarrierOptions& opt = {});

struct DivergenceTrace {
  PolyCone K;
  Vec y_bar;
  Vec k_bar;
  std::vector<std::pair<int, double>> distances;
  /// Smallest N with d_n strictly increasing for n >= N (n_max + 1 if none).
  int increasing_from = 0;
  double growth_ratio = 0.0;  // d_{n_max} / d_1
  bool contradiction = false;
  /// Sampled f(x) outside y_bar + K (the demo presumes none).
  int containment_violations = 0;
  int containment_samples = 0;
  std::string note;
};

/// d_n = d(y_bar + n·k_bar, 𝒫) for n = 1..n_max. `seed` drives the containment samples.
DivergenceTrace divergence_demo(const CvopProblem& prob, const PolyCone& K, const Vec& y_bar,
                                const Vec& k_bar, int n_max, const BarrierOptions& opt = {},
                                unsigned seed = 11);

}  // namespace cvop
