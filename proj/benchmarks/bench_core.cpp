#include <benchmark/benchmark.h>

#include "gsp/experiments.hpp"
#include "gsp/graph_core.hpp"
#include "gsp/sampler_design.hpp"
#include "gsp/sampling.hpp"
#include "gsp/ssl.hpp"

namespace {

using namespace gsp;

SpectralDecomposition er_decomp(Index n, bool directed) {
  return spectral_decompose(gen_erdos_renyi(n, 0.3, 11, directed));
}

void BM_DecomposeSymmetric(benchmark::State& state) {
  const GraphShift g = gen_erdos_renyi(state.range(0), 0.3, 11);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_decompose(g));
}
BENCHMARK(BM_DecomposeSymmetric)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_DecomposeDirected(benchmark::State& state) {
  const GraphShift g = gen_erdos_renyi(state.range(0), 0.3, 11, true);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_decompose(g));
}
BENCHMARK(BM_DecomposeDirected)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_GreedySampler(benchmark::State& state) {
  const SpectralDecomposition d = er_decomp(state.range(0), false);
  const Index k = state.range(1);
  for (auto _ : state) benchmark::DoNotOptimize(greedy_optimal_sampler(d, k, k));
}
BENCHMARK(BM_GreedySampler)->Args({50, 10})->Args({200, 10})->Args({200, 30})->Unit(benchmark::kMillisecond);

void BM_BruteForceSampler(benchmark::State& state) {
  const SpectralDecomposition d = er_decomp(12, true);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_optimal_sampler(d, 4, 4));
}
BENCHMARK(BM_BruteForceSampler)->Unit(benchmark::kMillisecond);

// Interpolator construction plus one recovery.
void BM_Interpolate(benchmark::State& state) {
  const Index n = state.range(0);
  const SpectralDecomposition d = er_decomp(n, false);
  const Index k = 10;
  const SamplingOperator psi = greedy_optimal_sampler(d, k, k).op(n);
  const GraphSignal x{d.v.leftCols(k) * Vector::Ones(k)};
  for (auto _ : state) {
    const Interpolator interp = build_interpolator(psi, d, k);
    benchmark::DoNotOptimize(interpolate(interp, psi.apply(x.values)));
  }
}
BENCHMARK(BM_Interpolate)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);

void BM_KnnGraph(benchmark::State& state) {
  RealMatrix centers(2, 2);
  centers << -2.0, 0.0, 2.0, 0.0;
  const FeatureSet f = make_gaussian_blobs(centers, state.range(0) / 2, 1.0, 3);
  for (auto _ : state) benchmark::DoNotOptimize(knn_graph(f, 12));
}
BENCHMARK(BM_KnnGraph)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
