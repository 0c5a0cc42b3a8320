#include "oracles.hpp"

#include <vector>

#include "cophtree/errors.hpp"

namespace cophtree::testing {

NodeId naive_lca(const MergeTree& t, NodeId a, NodeId b) {
  std::vector<bool> mark(t.size(), false);
  for (NodeId v = a;; v = t.parent(v)) {
    mark[v] = true;
    if (v == t.root()) break;
  }
  for (NodeId v = b;; v = t.parent(v)) {
    if (mark[v]) return v;
    if (v == t.root()) break;
  }
  return t.root();
}

CopheneticVector brute_cophenetic(const PhyloTree& t) {
  const std::size_t n = static_cast<std::size_t>(t.leaf_count());
  std::vector<double> entries;
  entries.reserve(n * (n + 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      entries.push_back(t.tree().height(
          naive_lca(t.tree(), t.leaf(static_cast<int>(i)),
                    t.leaf(static_cast<int>(j)))));
  return CopheneticVector(n, std::move(entries), t.names());
}

namespace {

// Topmost node at-or-below height h on the ancestor path of u. The pair
// (result, h) is the unique point of the tree at height h above u.
NodeId climb(const MergeTree& t, NodeId u, double h) {
  NodeId w = u;
  while (w != t.root() && t.height(t.parent(w)) <= h) w = t.parent(w);
  return w;
}

}  // namespace

bool constructive_hom_exists(const PhyloTree& x, const PhyloTree& y) {
  if (x.names() != y.names())
    throw TreeError(TreeErrc::label_set_mismatch,
                    "trees are labeled by different leaf name sets");
  const MergeTree& tx = x.tree();
  const MergeTree& ty = y.tree();

  // image[v] = node part of the forced image point (image[v], f(v)).
  std::vector<NodeId> image(tx.size(), k_no_node);
  for (int i = 0; i < x.leaf_count(); ++i) {
    const NodeId lx = x.leaf(i);
    const NodeId ly = y.leaf(i);
    const double h = tx.height(lx);
    if (h < ty.height(ly)) return false;  // nothing above the leaf down there
    image[lx] = climb(ty, ly, h);
  }
  // Preorder ids: children have larger ids, so a descending sweep sees every
  // child before its parent.
  for (NodeId v = static_cast<NodeId>(tx.size()); v-- > 0;) {
    if (tx.is_leaf(v)) continue;
    const double h = tx.height(v);
    NodeId target = k_no_node;
    for (NodeId c : tx.children(v)) {
      const NodeId w = climb(ty, image[c], h);
      if (target == k_no_node)
        target = w;
      else if (target != w)
        return false;  // children's images do not meet by height h
    }
    image[v] = target;
  }
  return true;
}

}  // namespace cophtree::testing
