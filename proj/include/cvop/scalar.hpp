#pragma once

// Weighted-sum scalarizations (P_w) and distances to the upper image.

#include "cvop/barrier.hpp"
#include "cvop/problem.hpp"
#include "cvop/upper_set.hpp"

namespace cvop {

enum class ScalarStatus { Bounded, Divergent, MaxIter };

struct ScalarVerdict {
  ScalarStatus status = ScalarStatus::MaxIter;
  Vec w;
  Vec argmin;     // bounded: the (approximate) minimizer
  Vec image;      // bounded: f(argmin)
  double value = 0.0;
  Vec ray;        // divergent: unit escape direction in x-space
  std::vector<double> trace;
  double kkt_residual = 0.0;
  double gap = 0.0;
  int newton_steps = 0;
  // Thresholds in force for this verdict.
  double m_div = 0.0;
  double r_div = 0.0;
};

const char* to_string(ScalarStatus s);

/// min w^T f(x) over the feasible region. Throws for w outside C⁺ \ {0}.
ScalarVerdict solve_weighted(const CvopProblem& prob, const Vec& w, const BarrierOptions& opt = {});

struct ImageDistance {
  ScalarStatus status = ScalarStatus::MaxIter;  // Bounded on success
  DistanceReport report;                        // witness_to = f(x*) + k*
  Vec x;
};

/// d(y, 𝒫) = min ‖y - z‖ over z ∈ f(x) + C, x feasible.
ImageDistance distance_to_upper_image(const CvopProblem& prob, const Vec& y,
                                      const BarrierOptions& opt = {});

/// Batch kernels. The parallel versions use OpenMP over independent solves and
/// return exactly what the serial references return.
std::vector<ScalarVerdict> solve_weighted_batch(const CvopProblem& prob, const VecList& ws,
                                                const BarrierOptions& opt = {});
std::vector<ScalarVerdict> solve_weighted_batch_serial(const CvopProblem& prob, const VecList& ws,
                                                       const BarrierOptions& opt = {});
std::vector<ImageDistance> distance_batch(const CvopProblem& prob, const VecList& ys,
                                          const BarrierOptions& opt = {});
std::vector<ImageDistance> distance_batch_serial(const CvopProblem& prob, const VecList& ys,
                                                 const BarrierOptions& opt = {});

/// Thread count for the batch kernels: CVOP_THREADS if set, else the OpenMP default.
int batch_threads();

}  // namespace cvop
