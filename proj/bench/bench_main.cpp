// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.
#include <benchmark/benchmark.h>

#include <random>

#include "hierpart/hierarchy.hpp"
#include "hierpart/nodes.hpp"

using namespace hierpart;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(1) == 0 ? Execution::Serial : Execution::Parallel;
}

void label(benchmark::State& state) { state.SetLabel(state.range(1) == 0 ? "serial" : "parallel"); }

void BM_EdgeCut(benchmark::State& state) {
  const auto side = static_cast<std::int32_t>(state.range(0));
  const Graph g = dual_graph(generate_structured_quad(side, side));
  std::mt19937_64 rng(1);
  std::vector<PartId> parts(static_cast<std::size_t>(g.num_vertices()));
  for (auto& p : parts) p = static_cast<PartId>(rng() % 64);
  const Partition p = Partition::make(std::move(parts), 64);
  for (auto _ : state) benchmark::DoNotOptimize(edge_cut(g, p, mode(state)));
  label(state);
}

void BM_Hierarchical(benchmark::State& state) {
  const auto side = static_cast<std::int32_t>(state.range(0));
  const Graph g = dual_graph(generate_structured_quad(side, side));
  HierarchyOptions opts;
  opts.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(hierarchical_partition(g, 32, 4, 1, opts));
  label(state);
}

void BM_InterfaceNodes(benchmark::State& state) {
  const auto side = static_cast<std::int32_t>(state.range(0));
  const Mesh m = generate_structured_quad(side, side);
  const Partition p = hierarchical_partition(dual_graph(m), 32, 4, 1);
  for (auto _ : state) benchmark::DoNotOptimize(assign_interface_partition(m, p, 1, mode(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_EdgeCut)->ArgsProduct({{256, 1024}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Hierarchical)->ArgsProduct({{128, 256}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InterfaceNodes)->ArgsProduct({{128, 256}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
