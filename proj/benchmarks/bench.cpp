#include <benchmark/benchmark.h>

#include <random>

#include "couplings/couple.hpp"
#include "couplings/feasibility.hpp"
#include "couplings/flow.hpp"
#include "couplings/generate.hpp"
#include "couplings/matching.hpp"

namespace {

using namespace couplings;

Instance make_random_instance(int side, int density_pct, unsigned seed) {
  std::mt19937 rng(seed);
  GeneratorConfig config;
  config.num_a = side;
  config.num_b = side;
  config.density_pct = density_pct;
  return random_probability_instance(config, rng);
}

void bm_max_flow(benchmark::State& state) {
  Instance instance =
      make_random_instance(static_cast<int>(state.range(0)), 40, 1);
  WeightedBipartiteGraph graph = to_graph(instance);
  for (auto _ : state) {
    FlowNetwork network = build_network(graph);
    benchmark::DoNotOptimize(max_flow(network));
  }
}
BENCHMARK(bm_max_flow)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void bm_minimal_deficiency(benchmark::State& state) {
  Instance instance =
      make_random_instance(static_cast<int>(state.range(0)), 25, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimal_deficiency(instance));
  }
}
BENCHMARK(bm_minimal_deficiency)->Arg(8)->Arg(16)->Arg(32);

void bm_couple_forest(benchmark::State& state) {
  // Dense enough that the instance is almost always feasible.
  Instance instance =
      make_random_instance(static_cast<int>(state.range(0)), 80, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(couple_forest(instance));
  }
}
BENCHMARK(bm_couple_forest)->Arg(8)->Arg(16)->Arg(32);

void bm_max_matching(benchmark::State& state) {
  std::mt19937 rng(4);
  int side = static_cast<int>(state.range(0));
  WeightedBipartiteGraph graph =
      random_unit_bipartite_graph(side, side, 30, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_matching(graph));
  }
}
BENCHMARK(bm_max_matching)->Arg(16)->Arg(64)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
