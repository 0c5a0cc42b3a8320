#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "cophtree/lca_index.hpp"
#include "cophtree/random_tree.hpp"

namespace {

using namespace cophtree;

PhyloTree make_tree(int leaves, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_phylo_tree(rng, leaves);
}

void bm_lca_build(benchmark::State& state) {
  const PhyloTree t = make_tree(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) {
    LcaIndex idx(t.tree());
    benchmark::DoNotOptimize(idx);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_lca_build)
    ->RangeMultiplier(8)
    ->Range(64, 32768)
    ->Complexity(benchmark::oNLogN);

void bm_lca_query(benchmark::State& state) {
  const PhyloTree t = make_tree(static_cast<int>(state.range(0)), 12);
  const LcaIndex idx(t.tree());
  std::mt19937_64 rng(13);
  std::vector<std::pair<NodeId, NodeId>> queries(4096);
  for (auto& [a, b] : queries) {
    a = static_cast<NodeId>(rng() % t.tree().size());
    b = static_cast<NodeId>(rng() % t.tree().size());
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [a, b] = queries[i++ & 4095];
    benchmark::DoNotOptimize(idx.join(a, b));
  }
}
BENCHMARK(bm_lca_query)->RangeMultiplier(8)->Range(64, 32768);

}  // namespace
