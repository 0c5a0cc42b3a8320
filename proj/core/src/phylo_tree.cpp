#include "cophtree/phylo_tree.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "cophtree/errors.hpp"

namespace cophtree {

PhyloTree::PhyloTree(MergeTree tree, std::vector<NodeId> leaf_of_label,
                     std::vector<std::string> name_of_label) {
  if (tree.size() == 0)
    throw TreeError(TreeErrc::empty_input, "tree has no nodes");
  const std::size_t n = name_of_label.size();
  if (leaf_of_label.size() != n)
    throw TreeError(TreeErrc::label_count_mismatch,
                    "got " + std::to_string(leaf_of_label.size()) +
                        " leaf links for " + std::to_string(n) + " names");
  if (tree.leaves().size() != n)
    throw TreeError(TreeErrc::label_count_mismatch,
                    "tree has " + std::to_string(tree.leaves().size()) +
                        " leaves but " + std::to_string(n) +
                        " labels were given");
  for (const std::string& s : name_of_label)
    if (s.empty())
      throw TreeError(TreeErrc::unnamed_leaf, "leaf with empty name");

  // Label index = lexicographic rank of the name.
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return name_of_label[a] < name_of_label[b];
  });
  names_.resize(n);
  leaf_of_label_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    names_[k] = std::move(name_of_label[perm[k]]);
    leaf_of_label_[k] = leaf_of_label[perm[k]];
  }
  for (std::size_t k = 1; k < n; ++k)
    if (names_[k] == names_[k - 1])
      throw TreeError(TreeErrc::duplicate_label,
                      "leaf name '" + names_[k] + "' appears twice");

  // Distinct leaf targets + matching counts = bijection onto the leaf set.
  std::vector<bool> taken(tree.size(), false);
  for (NodeId v : leaf_of_label_) {
    if (v >= tree.size() || !tree.is_leaf(v))
      throw std::invalid_argument("label maps to a non-leaf node");
    if (taken[v])
      throw std::invalid_argument("two labels map to the same leaf");
    taken[v] = true;
  }

  // Canonical child order for a labeled tree: by smallest label in the
  // subtree. Sibling subtrees hold disjoint label sets, so keys never tie.
  const std::size_t size = tree.size();
  std::vector<int> min_label(size, -1);
  for (std::size_t k = 0; k < n; ++k)
    min_label[leaf_of_label_[k]] = static_cast<int>(k);
  std::vector<std::vector<NodeId>> children(size);
  std::vector<NodeId> parents(size);
  for (NodeId v = 0; v < size; ++v) {
    auto span = tree.children(v);
    children[v].assign(span.begin(), span.end());
    parents[v] = tree.parent(v);
  }
  // Preorder ids put parents first, so a reverse sweep is a postorder.
  for (NodeId v = static_cast<NodeId>(size); v-- > 0;) {
    for (NodeId c : children[v])
      if (min_label[v] < 0 || min_label[c] < min_label[v])
        min_label[v] = min_label[c];
    std::sort(children[v].begin(), children[v].end(),
              [&](NodeId a, NodeId b) { return min_label[a] < min_label[b]; });
  }

  MergeTreeBuild build = detail::renumber_preorder(tree.heights(), parents,
                                                   children, tree.root());
  tree_ = std::move(build.tree);
  for (NodeId& v : leaf_of_label_) v = build.node_map[v];
}

PhyloTree label_tree(const MergeTree& t,
                     std::span<const std::string> names_in_leaf_order) {
  return PhyloTree(t, t.leaves(),
                   std::vector<std::string>(names_in_leaf_order.begin(),
                                            names_in_leaf_order.end()));
}

}  // namespace cophtree
