#pragma once

#include <string>
#include <vector>

#include "cophtree/merge_tree.hpp"

namespace cophtree {

// A merge tree together with a bijective labeling of its leaves by names.
// Label indices are dense and 0-based, assigned by lexicographic rank of the
// name, so any two trees over the same name set agree on indices no matter
// what order their files list the leaves in.
//
// Canonical form extends MergeTree's: children are ordered by the smallest
// label index contained in their subtree, then nodes renumbered in preorder.
// Two equal-looking trees are therefore equal member by member, which is what
// operator== checks. Immutable; queries are safe to call concurrently.
class PhyloTree {
 public:
  // `leaf_of_label[i]` is the leaf node of `tree` named `name_of_label[i]`.
  // Labels are re-ranked by name internally, so the input order of the two
  // arrays carries no meaning beyond their pairing.
  //
  // Throws TreeError: label_count_mismatch (arrays disagree with each other
  // or with the tree's leaf count), duplicate_label, unnamed_leaf (empty
  // name); std::invalid_argument when leaf_of_label points at a non-leaf or
  // repeats a node.
  PhyloTree(MergeTree tree, std::vector<NodeId> leaf_of_label,
            std::vector<std::string> name_of_label);

  const MergeTree& tree() const noexcept { return tree_; }
  int leaf_count() const noexcept { return static_cast<int>(leaf_of_label_.size()); }
  NodeId leaf(int label) const { return leaf_of_label_[label]; }
  const std::string& name(int label) const { return names_[label]; }

  // Strictly increasing; index into it == label.
  const std::vector<std::string>& names() const noexcept { return names_; }

  friend bool operator==(const PhyloTree&, const PhyloTree&) = default;

 private:
  MergeTree tree_;
  std::vector<NodeId> leaf_of_label_;
  std::vector<std::string> names_;
};

// Names the leaves of `t` in the order `t.leaves()` reports them.
PhyloTree label_tree(const MergeTree& t,
                     std::span<const std::string> names_in_leaf_order);

}  // namespace cophtree
