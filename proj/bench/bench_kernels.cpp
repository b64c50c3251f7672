// Serial reference paths against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include "gsamp/harness.hpp"

using namespace gsamp;

namespace {

Graph geometric(int n) {
  GraphSpec s;
  s.kind = GraphKind::random_geometric;
  s.n = n;
  s.radius = 0.08;
  s.seed = 1;
  return generate(s);
}

Exec exec_of(const benchmark::State& state) { return state.range(1) ? Exec::parallel : Exec::serial; }

void BM_PHopGraph(benchmark::State& state) {
  const Graph g = geometric(static_cast<int>(state.range(0)));
  const Exec exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(p_hop_graph(g, 3, exec));
  state.SetLabel(exec == Exec::parallel ? "parallel" : "serial");
}

void BM_Diameter(benchmark::State& state) {
  const Graph g = geometric(static_cast<int>(state.range(0)));
  const Exec exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(max_component_diameter(g, exec));
  state.SetLabel(exec == Exec::parallel ? "parallel" : "serial");
}

void BM_DominatingCurve(benchmark::State& state) {
  const Graph g = geometric(static_cast<int>(state.range(0)));
  const Exec exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(dominating_curve(g, 5, exec));
  state.SetLabel(exec == Exec::parallel ? "parallel" : "serial");
}

void BM_KnownSupportTrials(benchmark::State& state) {
  ExperimentConfig c;
  c.graph.n = 100;
  c.k = 10;
  c.samplers = {SamplerKind::proposed_insert, SamplerKind::uniform};
  c.values = {20, 40};
  c.sigma = 1e-3;
  c.trials = static_cast<int>(state.range(0));
  const Exec exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(run_known_support(c, exec));
  state.SetLabel(exec == Exec::parallel ? "parallel" : "serial");
}

void BM_UnknownSupportTrials(benchmark::State& state) {
  ExperimentConfig c;
  c.graph.n = 100;
  c.k = 5;
  c.samplers = {SamplerKind::proposed_insert};
  c.values = {40};
  c.trials = static_cast<int>(state.range(0));
  c.solver.relaxation = 1.8;
  c.solver.abs_tol = c.solver.rel_tol = 1e-6;
  c.solver.max_iter = 5000;
  const Exec exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(run_unknown_support(c, exec));
  state.SetLabel(exec == Exec::parallel ? "parallel" : "serial");
}

}  // namespace

BENCHMARK(BM_PHopGraph)->ArgsProduct({{500, 2000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Diameter)->ArgsProduct({{500, 2000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DominatingCurve)->ArgsProduct({{500}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KnownSupportTrials)->ArgsProduct({{100}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UnknownSupportTrials)->ArgsProduct({{20}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
