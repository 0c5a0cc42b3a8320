#include "cophtree/merge_tree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>

#include "cophtree/errors.hpp"

namespace cophtree {

bool MergeTree::leq(NodeId a, NodeId b) const {
  // Heights weakly increase along parent links, so once the walk climbs
  // past height(b) it can never reach b.
  const double hb = heights_[b];
  NodeId cur = a;
  while (true) {
    if (cur == b) return true;
    if (cur == root_ || heights_[cur] > hb) return false;
    cur = parents_[cur];
  }
}

MergeTree MergeTree::with_heights_shifted(double delta) const {
  MergeTree out = *this;
  for (double& h : out.heights_) h += delta;
  return out;
}

namespace detail {

MergeTreeBuild renumber_preorder(
    const std::vector<double>& heights, const std::vector<NodeId>& parents,
    const std::vector<std::vector<NodeId>>& children, NodeId root) {
  const std::size_t n = heights.size();
  std::vector<NodeId> new_of_old(n, k_no_node);
  std::vector<NodeId> order;  // new id -> old id
  order.reserve(n);
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    new_of_old[v] = static_cast<NodeId>(order.size());
    order.push_back(v);
    const std::vector<NodeId>& ch = children[v];
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }

  const std::size_t m = order.size();
  MergeTree t;
  t.heights_.resize(m);
  t.parents_.resize(m);
  t.child_offsets_.assign(m + 1, 0);
  for (std::size_t nid = 0; nid < m; ++nid) {
    NodeId old = order[nid];
    t.heights_[nid] = heights[old];
    t.parents_[nid] =
        old == root ? k_no_node : new_of_old[parents[old]];
    t.child_offsets_[nid + 1] =
        static_cast<std::uint32_t>(children[old].size());
  }
  for (std::size_t i = 1; i <= m; ++i)
    t.child_offsets_[i] += t.child_offsets_[i - 1];
  t.children_.resize(t.child_offsets_[m]);
  std::vector<std::uint32_t> cursor(t.child_offsets_.begin(),
                                    t.child_offsets_.end() - 1);
  for (std::size_t nid = 0; nid < m; ++nid) {
    for (NodeId c : children[order[nid]])
      t.children_[cursor[nid]++] = new_of_old[c];
  }
  t.root_ = new_of_old[root];
  for (NodeId nid = 0; nid < m; ++nid)
    if (t.child_offsets_[nid] == t.child_offsets_[nid + 1])
      t.leaves_.push_back(nid);
  return MergeTreeBuild{std::move(t), std::move(new_of_old)};
}

}  // namespace detail

MergeTreeBuild build_merge_tree(std::span<const RawNode> raw,
                                const BuildOptions& options) {
  const std::size_t n = raw.size();
  if (n == 0) throw TreeError(TreeErrc::empty_input, "tree has no nodes");

  NodeId root = k_no_node;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(raw[i].height))
      throw TreeError(TreeErrc::non_finite_height,
                      "node " + std::to_string(i) + " has non-finite height");
    if (raw[i].parent == k_no_node) {
      if (root != k_no_node)
        throw TreeError(TreeErrc::multiple_roots,
                        "nodes " + std::to_string(root) + " and " +
                            std::to_string(i) + " both lack a parent");
      root = static_cast<NodeId>(i);
    } else if (raw[i].parent >= n) {
      throw std::invalid_argument("node " + std::to_string(i) +
                                  " has out-of-range parent index");
    }
  }
  if (root == k_no_node)
    throw TreeError(TreeErrc::cycle_detected,
                    "no root: every node has a parent");

  std::vector<std::vector<NodeId>> children(n);
  for (std::size_t i = 0; i < n; ++i)
    if (raw[i].parent != k_no_node)
      children[raw[i].parent].push_back(static_cast<NodeId>(i));

  // Every node has a parent link except the root, so any node unreachable
  // from the root sits on or below a parent-link cycle.
  std::size_t reached = 0;
  {
    std::vector<NodeId> stack{root};
    std::vector<bool> seen(n, false);
    seen[root] = true;
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      ++reached;
      for (NodeId c : children[v]) {
        if (!seen[c]) {
          seen[c] = true;
          stack.push_back(c);
        }
      }
    }
  }
  if (reached != n)
    throw TreeError(TreeErrc::cycle_detected,
                    std::to_string(n - reached) +
                        " node(s) unreachable from the root (parent links "
                        "form a cycle)");

  for (std::size_t i = 0; i < n; ++i) {
    if (raw[i].parent == k_no_node) continue;
    double hp = raw[raw[i].parent].height;
    bool bad = options.strict_monotone ? raw[i].height >= hp
                                       : raw[i].height > hp;
    if (bad)
      throw TreeError(TreeErrc::non_monotone_edge,
                      "node " + std::to_string(i) + " at height " +
                          std::to_string(raw[i].height) +
                          " is not below its parent at height " +
                          std::to_string(hp));
  }

  // Splice out non-root pass-through vertices. The root keeps a single
  // child: its implicit upward edge supplies the second direction.
  std::vector<bool> spliced(n, false);
  for (std::size_t i = 0; i < n; ++i)
    if (static_cast<NodeId>(i) != root && children[i].size() == 1)
      spliced[i] = true;
  std::vector<std::vector<NodeId>> kept_children(n);
  std::vector<NodeId> parent2(n, k_no_node);
  for (std::size_t i = 0; i < n; ++i) {
    if (spliced[i]) continue;
    for (NodeId c : children[i]) {
      while (spliced[c]) c = children[c][0];
      kept_children[i].push_back(c);
      parent2[c] = static_cast<NodeId>(i);
    }
  }

  // Deterministic child order for the unlabeled tree: lowest reachable leaf
  // first, then own height, then input position. Labeling re-sorts later.
  std::vector<double> min_leaf_height(n, 0.0);
  {
    std::vector<std::pair<NodeId, bool>> stack{{root, false}};
    while (!stack.empty()) {
      auto [v, expanded] = stack.back();
      stack.pop_back();
      if (!expanded) {
        stack.push_back({v, true});
        for (NodeId c : kept_children[v]) stack.push_back({c, false});
      } else if (kept_children[v].empty()) {
        min_leaf_height[v] = raw[v].height;
      } else {
        double m = min_leaf_height[kept_children[v][0]];
        for (NodeId c : kept_children[v])
          m = std::min(m, min_leaf_height[c]);
        min_leaf_height[v] = m;
      }
    }
  }
  std::vector<double> heights(n);
  for (std::size_t i = 0; i < n; ++i) heights[i] = raw[i].height;
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(kept_children[i].begin(), kept_children[i].end(),
              [&](NodeId a, NodeId b) {
                return std::tuple(min_leaf_height[a], heights[a], a) <
                       std::tuple(min_leaf_height[b], heights[b], b);
              });
  }

  // Spliced nodes are unreachable from the root here, so their node_map
  // entries come back as k_no_node.
  return detail::renumber_preorder(heights, parent2, kept_children, root);
}

}  // namespace cophtree
