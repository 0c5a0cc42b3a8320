#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace cophtree {

using NodeId = std::uint32_t;
inline constexpr NodeId k_no_node = std::numeric_limits<NodeId>::max();

// One vertex of the raw input: a height and a parent link.
// `parent == k_no_node` marks the root.
struct RawNode {
  double height = 0.0;
  NodeId parent = k_no_node;
};

struct BuildOptions {
  // Reject parent/child pairs at equal height. Off by default: zero-length
  // branches are common in real data, and no pairwise join query can tell
  // the difference.
  bool strict_monotone = false;
};

struct MergeTreeBuild;

namespace detail {
MergeTreeBuild renumber_preorder(const std::vector<double>& heights,
                                 const std::vector<NodeId>& parents,
                                 const std::vector<std::vector<NodeId>>& children,
                                 NodeId root);
}

// Rooted tree with real-valued node heights, weakly increasing toward the
// root. The root carries an implicit upward edge to +inf; it is never stored
// and no query evaluates heights above the root.
//
// Canonical form: non-root internal vertices have >= 2 children (pass-through
// vertices are spliced out at build time; the root may keep a single child
// since it anchors the implicit upward edge), nodes are numbered in preorder,
// and children are deterministically ordered. Immutable once built; all
// queries are safe to call concurrently.
class MergeTree {
 public:
  MergeTree() = default;

  std::size_t size() const noexcept { return heights_.size(); }
  NodeId root() const noexcept { return root_; }
  double height(NodeId v) const { return heights_[v]; }
  NodeId parent(NodeId v) const { return parents_[v]; }
  bool is_leaf(NodeId v) const { return child_offsets_[v] == child_offsets_[v + 1]; }

  std::span<const NodeId> children(NodeId v) const {
    return {children_.data() + child_offsets_[v],
            children_.data() + child_offsets_[v + 1]};
  }

  // Childless nodes, in preorder.
  const std::vector<NodeId>& leaves() const noexcept { return leaves_; }
  const std::vector<double>& heights() const noexcept { return heights_; }

  // True iff b is an ancestor of a, or a itself; equivalently the unique
  // path a -> b is monotone nondecreasing in height. O(depth).
  bool leq(NodeId a, NodeId b) const;

  // Same shape, every height moved by delta.
  MergeTree with_heights_shifted(double delta) const;

  friend bool operator==(const MergeTree&, const MergeTree&) = default;

 private:
  friend MergeTreeBuild detail::renumber_preorder(const std::vector<double>&,
                                                  const std::vector<NodeId>&,
                                                  const std::vector<std::vector<NodeId>>&,
                                                  NodeId);

  std::vector<double> heights_;
  std::vector<NodeId> parents_;
  std::vector<NodeId> children_;              // concatenated child lists
  std::vector<std::uint32_t> child_offsets_;  // size() + 1 entries
  std::vector<NodeId> leaves_;
  NodeId root_ = k_no_node;
};

struct MergeTreeBuild {
  MergeTree tree;
  // raw index -> canonical node id, k_no_node for spliced pass-through nodes
  std::vector<NodeId> node_map;
};

// Validates and canonicalizes the raw parent-link representation.
//
// Throws TreeError: empty_input, cycle_detected, multiple_roots,
// non_monotone_edge (child above parent; with strict_monotone, child at the
// parent's height too), non_finite_height.
MergeTreeBuild build_merge_tree(std::span<const RawNode> raw,
                                const BuildOptions& options = {});

}  // namespace cophtree
