#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cophtree/phylo_tree.hpp"

namespace cophtree {

// One vertex of the Newick parse tree, before any height semantics apply.
struct NewickNode {
  std::string name;  // empty when absent
  std::optional<double> branch_length;
  std::optional<double> height;  // from a [&height=...] annotation
  std::vector<NewickNode> children;
};

// Parses one or more semicolon-terminated tree statements.
//
// Supported grammar: nested parentheses, comma-separated children, bare or
// quoted names ('' escapes a quote), optional ":length", bracket comments
// skipped anywhere between tokens. A comment of the exact form [&height=x]
// attaches to the node it follows. Whitespace insensitive.
//
// Arbitrary byte input never crashes the parser; every rejection is a
// ParseError carrying a byte position.
std::vector<NewickNode> parse_newick(std::string_view text);

// How node heights are derived from a parse tree.
enum class HeightConvention {
  // height(v) = -(sum of branch lengths from the root down to v), root at 0.
  // Well-defined and monotone for every nonnegative-length input.
  depth_negative,
  // Requires all root-to-leaf path lengths equal within 1e-9; assigns
  // height(v) = leaf depth - depth(v), so leaves sit at 0.
  leaf_zero_ultrametric,
  // Takes heights verbatim from [&height=...] annotations, which must be
  // present on every node. Branch lengths are ignored.
  explicit_heights,
};

// Converts one parse tree into a validated, canonicalized PhyloTree.
//
// Throws TreeError: missing_branch_length (conventions 1-2), not_ultrametric
// (convention 2), missing_height_annotation (convention 3), unnamed_leaf,
// duplicate_label, plus anything build_merge_tree raises.
PhyloTree to_phylo(const NewickNode& node, HeightConvention convention);

// Canonical Newick text with [&height=...] annotations: children ordered by
// smallest contained leaf name, heights in their shortest round-tripping
// decimal form, no branch lengths, internal nodes unnamed. Feeding the output
// back through parse_newick + to_phylo(explicit_heights) reproduces `t`
// exactly.
std::string serialize(const PhyloTree& t);

}  // namespace cophtree
