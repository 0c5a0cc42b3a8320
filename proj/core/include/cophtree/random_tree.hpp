#pragma once

#include <random>

#include "cophtree/phylo_tree.hpp"

namespace cophtree {

struct RandomTreeOptions {
  double height_lo = 0.0;
  double height_hi = 100.0;
  // Draw heights from the grid k/1024 instead of the continuum, so that
  // shifts and differences of generated heights stay exact in double.
  bool dyadic = false;
  // Chance that a merge step absorbs an extra child, producing nodes of
  // degree three or more.
  double multifurcation_p = 0.15;
};

// A random labeled merge tree with the given number of leaves. Leaf names are
// zero-padded ("L000", "L001", ...) so lexicographic and numeric order agree.
// Deterministic for a fixed generator state.
PhyloTree random_phylo_tree(std::mt19937_64& rng, int leaf_count,
                            const RandomTreeOptions& options = {});

}  // namespace cophtree
