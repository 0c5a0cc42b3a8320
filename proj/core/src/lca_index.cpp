#include "cophtree/lca_index.hpp"

namespace cophtree {

LcaIndex::LcaIndex(const MergeTree& tree)
    : tree_(&tree),
      heights_(tree.heights().data()),
      tour_size_(static_cast<std::uint32_t>(2 * tree.size() - 1)) {
  const std::size_t n = tree.size();
  tour_.reserve(tour_size_);
  depths_.reserve(tour_size_);
  first_.assign(n, 0);

  // Euler tour: a node is appended on arrival and again after each child
  // returns, giving degree + 1 appearances, 2n - 1 positions in total.
  struct Frame {
    NodeId node;
    std::uint32_t next_child;
    std::int32_t depth;
  };
  std::vector<Frame> stack;
  stack.push_back({tree.root(), 0, 0});
  while (!stack.empty()) {
    Frame f = stack.back();
    if (f.next_child == 0)
      first_[f.node] = static_cast<std::uint32_t>(tour_.size());
    tour_.push_back(f.node);
    depths_.push_back(f.depth);
    auto ch = tree.children(f.node);
    if (f.next_child < ch.size()) {
      stack.back().next_child = f.next_child + 1;
      stack.push_back({ch[f.next_child], 0, f.depth + 1});
    } else {
      stack.pop_back();
    }
  }

  floor_log2_.assign(tour_size_ + 1, 0);
  for (std::uint32_t i = 2; i <= tour_size_; ++i)
    floor_log2_[i] = floor_log2_[i / 2] + 1;

  const std::uint32_t layers = floor_log2_[tour_size_] + 1;
  table_.assign(static_cast<std::size_t>(layers) * tour_size_, 0);
  for (std::uint32_t i = 0; i < tour_size_; ++i) table_[i] = i;
  for (std::uint32_t k = 1; k < layers; ++k) {
    const std::uint32_t half = 1u << (k - 1);
    const std::uint32_t span = 1u << k;
    const std::uint32_t* prev = table_.data() + (k - 1) * tour_size_;
    std::uint32_t* cur = table_.data() + k * tour_size_;
    for (std::uint32_t i = 0; i + span <= tour_size_; ++i) {
      std::uint32_t a = prev[i];
      std::uint32_t b = prev[i + half];
      cur[i] = depths_[a] <= depths_[b] ? a : b;
    }
  }
}

}  // namespace cophtree
