#include "cophtree/random_tree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "cophtree/merge_tree.hpp"

namespace cophtree {

PhyloTree random_phylo_tree(std::mt19937_64& rng, int leaf_count,
                            const RandomTreeOptions& options) {
  if (leaf_count < 1)
    throw std::invalid_argument("leaf_count must be >= 1");

  auto draw = [&](double lo, double hi) {
    if (options.dyadic) {
      const long klo = static_cast<long>(std::ceil(lo * 1024.0));
      const long khi =
          std::max(klo, static_cast<long>(std::floor(hi * 1024.0)));
      return std::uniform_int_distribution<long>(klo, khi)(rng) / 1024.0;
    }
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };

  // Leaves first, then repeated merges of random forest roots; a parent's
  // height is drawn from [tallest child, height_hi], so weak monotonicity
  // holds by construction and zero-length edges occur.
  std::vector<RawNode> raw;
  std::vector<NodeId> roots;
  for (int i = 0; i < leaf_count; ++i) {
    raw.push_back({draw(options.height_lo, options.height_hi), k_no_node});
    roots.push_back(static_cast<NodeId>(i));
  }
  std::bernoulli_distribution extra(options.multifurcation_p);
  while (roots.size() > 1) {
    std::size_t k = 2;
    while (k < roots.size() && extra(rng)) ++k;
    std::vector<NodeId> picked;
    double tallest = options.height_lo;
    for (std::size_t t = 0; t < k; ++t) {
      std::uniform_int_distribution<std::size_t> d(0, roots.size() - 1);
      const std::size_t idx = d(rng);
      picked.push_back(roots[idx]);
      tallest = std::max(tallest, raw[roots[idx]].height);
      roots[idx] = roots.back();
      roots.pop_back();
    }
    const NodeId parent = static_cast<NodeId>(raw.size());
    raw.push_back({draw(tallest, options.height_hi), k_no_node});
    for (NodeId c : picked) raw[c].parent = parent;
    roots.push_back(parent);
  }

  int width = 3;
  for (int v = leaf_count - 1, digits = 1; v >= 10; v /= 10)
    width = std::max(width, ++digits);
  std::vector<std::string> names(leaf_count);
  for (int i = 0; i < leaf_count; ++i) {
    const std::string s = std::to_string(i);
    names[i] = "L" + std::string(width - s.size(), '0') + s;
  }

  MergeTreeBuild build = build_merge_tree(raw);
  std::vector<NodeId> leaf_of_label(static_cast<std::size_t>(leaf_count));
  for (int i = 0; i < leaf_count; ++i) leaf_of_label[i] = build.node_map[i];
  return PhyloTree(std::move(build.tree), std::move(leaf_of_label),
                   std::move(names));
}

}  // namespace cophtree
