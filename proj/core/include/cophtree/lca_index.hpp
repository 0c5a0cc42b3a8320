#pragma once

#include <cstdint>
#include <vector>

#include "cophtree/merge_tree.hpp"

namespace cophtree {

// Constant-time lowest common ancestor queries over a fixed MergeTree.
//
// Build walks an Euler tour (length 2N-1 for N nodes) and layers a sparse
// table of argmin positions over the tour depths. Ties in depth resolve to
// the leftmost position; any minimum position inside the queried window names
// the same vertex, so the tie rule never changes join().
//
// The index borrows the tree; it must not outlive it.
class LcaIndex {
 public:
  explicit LcaIndex(const MergeTree& tree);

  // Lowest common ancestor, i.e. the join a v b in the merge-tree order.
  NodeId join(NodeId a, NodeId b) const {
    std::uint32_t l = first_[a];
    std::uint32_t r = first_[b];
    if (l > r) {
      std::uint32_t t = l;
      l = r;
      r = t;
    }
    return tour_[range_argmin(l, r)];
  }

  double join_height(NodeId a, NodeId b) const {
    return heights_[join(a, b)];
  }

  const std::vector<NodeId>& euler_tour() const { return tour_; }
  const std::vector<std::int32_t>& tour_depths() const { return depths_; }
  const std::vector<std::uint32_t>& first_occurrence() const { return first_; }

 private:
  // Position of the minimum depth in tour positions [l, r], leftmost on ties.
  std::uint32_t range_argmin(std::uint32_t l, std::uint32_t r) const {
    std::uint32_t k = floor_log2_[r - l + 1];
    std::uint32_t left = table_[k * tour_size_ + l];
    std::uint32_t right = table_[k * tour_size_ + (r - (1u << k) + 1)];
    return depths_[left] <= depths_[right] ? left : right;
  }

  const MergeTree* tree_;
  const double* heights_;
  std::uint32_t tour_size_;
  std::vector<NodeId> tour_;
  std::vector<std::int32_t> depths_;
  std::vector<std::uint32_t> first_;
  std::vector<std::uint32_t> table_;  // layer-major argmin positions
  std::vector<std::uint32_t> floor_log2_;
};

}  // namespace cophtree
