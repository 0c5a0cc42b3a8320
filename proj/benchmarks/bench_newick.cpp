#include <random>
#include <string>

#include <benchmark/benchmark.h>

#include "cophtree/newick.hpp"
#include "cophtree/random_tree.hpp"

namespace {

using namespace cophtree;

std::string make_text(int leaves, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return serialize(random_phylo_tree(rng, leaves));
}

void bm_parse(benchmark::State& state) {
  const std::string text = make_text(static_cast<int>(state.range(0)), 21);
  for (auto _ : state) benchmark::DoNotOptimize(parse_newick(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(text.size()));
}
BENCHMARK(bm_parse)->RangeMultiplier(8)->Range(64, 32768);

void bm_parse_to_phylo(benchmark::State& state) {
  const std::string text = make_text(static_cast<int>(state.range(0)), 22);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        to_phylo(parse_newick(text)[0], HeightConvention::explicit_heights));
}
BENCHMARK(bm_parse_to_phylo)->RangeMultiplier(8)->Range(64, 32768);

void bm_serialize(benchmark::State& state) {
  std::mt19937_64 rng(23);
  const PhyloTree t = random_phylo_tree(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serialize(t));
}
BENCHMARK(bm_serialize)->RangeMultiplier(8)->Range(64, 32768);

}  // namespace
