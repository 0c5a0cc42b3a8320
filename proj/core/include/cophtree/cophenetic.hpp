#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cophtree/lca_index.hpp"
#include "cophtree/phylo_tree.hpp"

namespace cophtree {

// The vector of pairwise join heights of a labeled tree: one entry per
// unordered leaf pair including the diagonal, n(n+1)/2 in total for n leaves.
// Entry (i, j) with i <= j is the height of leaf(i) v leaf(j); the diagonal
// entry (i, i) is the height of leaf i itself.
class CopheneticVector {
 public:
  CopheneticVector(std::size_t leaf_count, std::vector<double> entries,
                   std::vector<std::string> names);

  std::size_t leaf_count() const { return leaf_count_; }
  std::size_t pair_count() const { return entries_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<double>& entries() const { return entries_; }

  // Order-insensitive pair lookup.
  double entry(std::size_t i, std::size_t j) const {
    return i <= j ? entries_[offset(i, j, leaf_count_)]
                  : entries_[offset(j, i, leaf_count_)];
  }

  // Flat index of pair (i, j), requires i <= j < n. Row-major over the upper
  // triangle: row i starts after the i longer rows above it.
  static std::size_t offset(std::size_t i, std::size_t j, std::size_t n) {
    return i * n - i * (i - 1) / 2 + (j - i);
  }

  bool operator==(const CopheneticVector&) const = default;

 private:
  std::size_t leaf_count_;
  std::vector<double> entries_;
  std::vector<std::string> names_;
};

// Computes the vector in O(n^2) joins against a prebuilt index.
CopheneticVector cophenetic_vector(const PhyloTree& t, const LcaIndex& idx);
CopheneticVector cophenetic_vector(const PhyloTree& t);

// Max absolute entrywise difference. Throws TreeError (dimension_mismatch,
// then label_set_mismatch) when the vectors do not describe comparable trees.
double linf_distance(const CopheneticVector& a, const CopheneticVector& b);

enum class PNorm { l1, l2, linf };

double lp_distance(const CopheneticVector& a, const CopheneticVector& b,
                   PNorm p);

// Whether a tree morphism exists from the tree behind `a` to the tree behind
// `b`, decided entrywise: true iff every entry of `a` is >= the matching
// entry of `b`.
bool hom_exists(const CopheneticVector& a, const CopheneticVector& b);

// {"labels": [...], "rows": [[...], ...]} with rows the upper triangle,
// row i holding entries (i, i) through (i, n-1).
std::string to_json(const CopheneticVector& v, int max_significant_digits = 0);

// RFC 4180 CSV, header "label_i,label_j,height", one line per pair in flat
// index order.
std::string to_csv(const CopheneticVector& v, int max_significant_digits = 0);

}  // namespace cophtree
