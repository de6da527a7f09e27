// Serial reference kernels against their OpenMP counterparts.
//
//   ./bench_kernels --benchmark_filter=separate
#include <benchmark/benchmark.h>

#include <map>

#include "qbst/bcr.hpp"
#include "qbst/decompose.hpp"
#include "qbst/random_instance.hpp"
#include "qbst/sampler.hpp"

using namespace qbst;

namespace {

struct Workload {
  Instance inst;
  Digraph dg;
  ArcVector lp;        // BCR optimum
  ArcVector minimal;   // fractional minimal point, a harder decomposition input
  SamplingPlan plan;
};

// Instances are built once per size and shared by every benchmark.
const Workload& workload(int vertices) {
  static std::map<int, Workload> cache;
  auto it = cache.find(vertices);
  if (it != cache.end()) return it->second;
  RandomInstanceParams params;
  params.min_vertices = vertices;
  params.max_vertices = vertices;
  params.min_terminals = vertices / 3;
  params.max_terminals = vertices / 3;
  params.terminal_edge_probability = 0.1;
  params.steiner_edge_probability = 0.5;
  Instance inst = random_quasi_bipartite(params, 42);
  Digraph dg = bidirect(inst);
  ArcVector lp = solve_bcr(dg).x;
  ArcVector minimal = random_minimal_point(inst, dg, 42);
  SamplingPlan plan = build_plan(lp, inst, dg, 7);
  return cache.emplace(vertices, Workload{std::move(inst), std::move(dg), std::move(lp), std::move(minimal),
                                          std::move(plan)})
      .first->second;
}

Execution mode(const benchmark::State& state) {
  return state.range(1) != 0 ? Execution::parallel : Execution::serial;
}

void BM_separate(benchmark::State& state) {
  const Workload& w = workload(static_cast<int>(state.range(0)));
  // Halving the point leaves every terminal cut violated.
  ArcVector half;
  for (const auto& [a, v] : w.lp.entries()) half.set(a, v / 2);
  for (auto _ : state) benchmark::DoNotOptimize(separate(w.dg, half, mode(state)));
}

void BM_make_minimal(benchmark::State& state) {
  const Workload& w = workload(static_cast<int>(state.range(0)));
  ArcVector doubled;
  for (const auto& [a, v] : w.lp.entries()) doubled.set(a, v * 2);
  for (auto _ : state) benchmark::DoNotOptimize(make_minimal(w.dg, doubled, mode(state)));
}

void BM_decompose(benchmark::State& state) {
  const Workload& w = workload(static_cast<int>(state.range(0)));
  DecomposeOptions options;
  options.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(w.minimal, w.dg, options));
}

void BM_sample_trials(benchmark::State& state) {
  const Workload& w = workload(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sample_trials(w.plan, w.inst, 200, mode(state)));
}

void sizes(benchmark::internal::Benchmark* b) {
  b->ArgNames({"n", "parallel"});
  for (int n : {12, 24, 36}) {
    b->Args({n, 0});
    b->Args({n, 1});
  }
  b->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_separate)->Apply(sizes);
BENCHMARK(BM_make_minimal)->Apply(sizes);
BENCHMARK(BM_decompose)->Apply(sizes);
BENCHMARK(BM_sample_trials)->Apply(sizes);

BENCHMARK_MAIN();
