// Parallel batch kernels against their serial references.
// Thread count follows CVOP_THREADS (else the OpenMP default).

#include "cvop/registry.hpp"
#include "cvop/scalar.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace cvop;

namespace {

VecList weights(const CvopProblem& p, int count) {
  return weight_base(p.C_dual(), p.c(), count).weights;
}

VecList ray_points(int count) {
  const double e1 = std::exp(-1.0);
  VecList ys;
  for (int n = 1; n <= count; ++n) ys.push_back(make_vec({-e1 * n, static_cast<double>(n)}));
  return ys;
}

void BM_weighted_serial(benchmark::State& st) {
  const CvopProblem p = builtin_problem("quad_bowl");
  const VecList ws = weights(p, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(solve_weighted_batch_serial(p, ws));
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(ws.size()));
}

void BM_weighted_parallel(benchmark::State& st) {
  const CvopProblem p = builtin_problem("quad_bowl");
  const VecList ws = weights(p, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(solve_weighted_batch(p, ws));
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(ws.size()));
  st.counters["threads"] = batch_threads();
}

void BM_distance_serial(benchmark::State& st) {
  const CvopProblem p = builtin_problem("expon");
  const VecList ys = ray_points(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(distance_batch_serial(p, ys));
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(ys.size()));
}

void BM_distance_parallel(benchmark::State& st) {
  const CvopProblem p = builtin_problem("expon");
  const VecList ys = ray_points(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(distance_batch(p, ys));
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(ys.size()));
  st.counters["threads"] = batch_threads();
}

}  // namespace

// weight_base(.., k) on a triangle gives k(k+1)/2 weights.
BENCHMARK(BM_weighted_serial)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_weighted_parallel)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_distance_serial)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_distance_parallel)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
