#include <random>

#include <benchmark/benchmark.h>

#include "cophtree/cophenetic.hpp"
#include "cophtree/interleave.hpp"
#include "cophtree/random_tree.hpp"

namespace {

using namespace cophtree;

PhyloTree make_tree(int leaves, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_phylo_tree(rng, leaves);
}

void bm_cophenetic_vector(benchmark::State& state) {
  const PhyloTree t = make_tree(static_cast<int>(state.range(0)), 1);
  const LcaIndex idx(t.tree());
  for (auto _ : state) benchmark::DoNotOptimize(cophenetic_vector(t, idx));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_cophenetic_vector)
    ->RangeMultiplier(4)
    ->Range(64, 4096)
    ->Complexity(benchmark::oNSquared);

void bm_linf_distance(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CopheneticVector a = cophenetic_vector(make_tree(n, 2));
  const CopheneticVector b = cophenetic_vector(make_tree(n, 3));
  for (auto _ : state) benchmark::DoNotOptimize(linf_distance(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_linf_distance)
    ->RangeMultiplier(4)
    ->Range(64, 4096)
    ->Complexity(benchmark::oNSquared);

// Index build + two vectors + the scan, the whole distance pipeline.
void bm_distance_end_to_end(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PhyloTree a = make_tree(n, 4);
  const PhyloTree b = make_tree(n, 5);
  for (auto _ : state)
    benchmark::DoNotOptimize(phtree_distance_closed_form(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_distance_end_to_end)
    ->RangeMultiplier(4)
    ->Range(64, 4096)
    ->Complexity(benchmark::oNSquared);

}  // namespace

BENCHMARK_MAIN();
