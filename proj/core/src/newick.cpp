#include "cophtree/newick.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <utility>

#include "cophtree/decimal.hpp"
#include "cophtree/errors.hpp"
#include "cophtree/merge_tree.hpp"

namespace cophtree {

namespace {

// Recursive descent flattened into explicit stacks; arbitrary byte input and
// arbitrary nesting depth must fail with a positioned error, never by
// overflowing the call stack. The depth cap keeps the parse tree's own
// (recursive) destructor inside stack bounds too.
constexpr std::size_t k_max_depth = 20000;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  bool at_end() const { return pos_ == text_.size(); }
  std::size_t pos() const { return pos_; }

  // Whitespace and bracket comments. A comment of the form [&height=x]
  // assigns to *target when one is in scope; elsewhere it is skipped like
  // any other comment. Comments do not nest.
  void skip_trivia(NewickNode* target) {
    for (;;) {
      while (!at_end() && std::isspace(static_cast<unsigned char>(peek())))
        ++pos_;
      if (at_end() || peek() != '[') return;
      const std::size_t open = pos_;
      const std::size_t close = text_.find(']', pos_ + 1);
      if (close == std::string_view::npos)
        throw ParseError(ParseErrc::syntax, open, "unterminated '[' comment");
      const std::string_view body = text_.substr(pos_ + 1, close - pos_ - 1);
      constexpr std::string_view key = "&height=";
      if (body.substr(0, key.size()) == key) {
        const std::string_view num = body.substr(key.size());
        double value = 0.0;
        auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(),
                                       value);
        if (ec != std::errc{} || p != num.data() + num.size() ||
            !std::isfinite(value))
          throw ParseError(ParseErrc::syntax, open + 1 + key.size(),
                           "malformed height annotation");
        if (target) target->height = value;
      }
      pos_ = close + 1;
    }
  }

  NewickNode parse_statement() {
    std::vector<std::vector<NewickNode>> open_groups;
    NewickNode current;
    for (;;) {
      // Position expecting a subtree.
      skip_trivia(nullptr);
      if (!at_end() && peek() == '(') {
        if (open_groups.size() == k_max_depth)
          throw ParseError(ParseErrc::syntax, pos_,
                           "nesting deeper than " +
                               std::to_string(k_max_depth) + " levels");
        ++pos_;
        open_groups.emplace_back();
        continue;
      }
      current = NewickNode{};
      parse_suffix(current);
      // Separators; ')' completes a group whose own suffix may follow.
      for (;;) {
        if (at_end()) {
          if (!open_groups.empty())
            throw ParseError(ParseErrc::syntax, pos_,
                             "unexpected end of input inside '('");
          throw ParseError(ParseErrc::missing_semicolon, pos_,
                           "missing ';' after tree");
        }
        const char c = peek();
        if (c == ';') {
          if (!open_groups.empty())
            throw ParseError(ParseErrc::syntax, pos_,
                             "';' inside unclosed '('");
          ++pos_;
          return current;
        }
        if (c == ',') {
          if (open_groups.empty())
            throw ParseError(ParseErrc::syntax, pos_,
                             "',' outside parentheses");
          ++pos_;
          open_groups.back().push_back(std::move(current));
          break;
        }
        if (c == ')') {
          if (open_groups.empty())
            throw ParseError(ParseErrc::syntax, pos_, "unbalanced ')'");
          ++pos_;
          open_groups.back().push_back(std::move(current));
          NewickNode group;
          group.children = std::move(open_groups.back());
          open_groups.pop_back();
          parse_suffix(group);
          current = std::move(group);
          continue;
        }
        throw ParseError(ParseErrc::syntax, pos_, "expected ',', ')' or ';'");
      }
    }
  }

 private:
  char peek() const { return text_[pos_]; }

  // Optional name, optional ":length", trivia in between; annotations here
  // attach to `node`. The whole suffix may be empty.
  void parse_suffix(NewickNode& node) {
    skip_trivia(&node);
    if (!at_end() && peek() == '\'')
      parse_quoted_name(node);
    else
      parse_bare_name(node);
    skip_trivia(&node);
    if (!at_end() && peek() == ':') {
      ++pos_;
      skip_trivia(&node);
      node.branch_length = parse_branch_length();
      skip_trivia(&node);
    }
  }

  void parse_bare_name(NewickNode& node) {
    const std::size_t start = pos_;
    while (!at_end()) {
      const char c = peek();
      if (c == '(' || c == ')' || c == ',' || c == ';' || c == ':' ||
          c == '[' || c == ']' || c == '\'' ||
          std::isspace(static_cast<unsigned char>(c)))
        break;
      ++pos_;
    }
    node.name.assign(text_.substr(start, pos_ - start));
  }

  void parse_quoted_name(NewickNode& node) {
    const std::size_t open = pos_;
    ++pos_;
    std::string name;
    for (;;) {
      if (at_end())
        throw ParseError(ParseErrc::unterminated_quote, open,
                         "unterminated quoted name");
      const char c = text_[pos_];
      if (c == '\'') {
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '\'') {
          name += '\'';
          pos_ += 2;
        } else {
          ++pos_;
          break;
        }
      } else {
        name += c;
        ++pos_;
      }
    }
    node.name = std::move(name);
  }

  double parse_branch_length() {
    const std::size_t start = pos_;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double value = 0.0;
    auto [p, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || p == begin)
      throw ParseError(ParseErrc::syntax, start, "expected a branch length");
    pos_ = static_cast<std::size_t>(p - text_.data());
    if (!std::isfinite(value))
      throw ParseError(ParseErrc::syntax, start,
                       "branch length must be finite");
    if (value < 0)
      throw ParseError(ParseErrc::negative_branch_length, start,
                       "branch length must be >= 0");
    return value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<NewickNode> parse_newick(std::string_view text) {
  Parser parser(text);
  std::vector<NewickNode> out;
  parser.skip_trivia(nullptr);
  if (parser.at_end())
    throw ParseError(ParseErrc::syntax, parser.pos(),
                     "empty input: expected a tree");
  while (!parser.at_end()) {
    out.push_back(parser.parse_statement());
    parser.skip_trivia(nullptr);
  }
  return out;
}

namespace {

struct Flattened {
  std::vector<const NewickNode*> nodes;  // preorder
  std::vector<NodeId> parent_of;
};

Flattened flatten(const NewickNode& root) {
  Flattened out;
  struct Item {
    const NewickNode* node;
    NodeId parent;
  };
  std::vector<Item> stack{{&root, k_no_node}};
  while (!stack.empty()) {
    auto [node, parent] = stack.back();
    stack.pop_back();
    const NodeId id = static_cast<NodeId>(out.nodes.size());
    out.nodes.push_back(node);
    out.parent_of.push_back(parent);
    for (auto it = node->children.rbegin(); it != node->children.rend(); ++it)
      stack.push_back({&*it, id});
  }
  return out;
}

std::vector<double> depths_from_lengths(const Flattened& flat) {
  const std::size_t n = flat.nodes.size();
  std::vector<double> depth(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    if (!flat.nodes[i]->branch_length)
      throw TreeError(TreeErrc::missing_branch_length,
                      "node without a branch length (name '" +
                          flat.nodes[i]->name + "')");
    depth[i] = depth[flat.parent_of[i]] + *flat.nodes[i]->branch_length;
  }
  return depth;
}

}  // namespace

PhyloTree to_phylo(const NewickNode& node, HeightConvention convention) {
  Flattened flat = flatten(node);
  const std::size_t n = flat.nodes.size();

  std::vector<double> heights(n);
  switch (convention) {
    case HeightConvention::depth_negative: {
      std::vector<double> depth = depths_from_lengths(flat);
      // 0.0 - depth, not -depth: the root's depth is +0.0 and its height
      // must be +0.0, not -0.0 (which would print as "-0").
      for (std::size_t i = 0; i < n; ++i) heights[i] = 0.0 - depth[i];
      break;
    }
    case HeightConvention::leaf_zero_ultrametric: {
      std::vector<double> depth = depths_from_lengths(flat);
      double lo = 0.0, hi = 0.0;
      bool first = true;
      for (std::size_t i = 0; i < n; ++i) {
        if (!flat.nodes[i]->children.empty()) continue;
        if (first) {
          lo = hi = depth[i];
          first = false;
        } else {
          lo = std::min(lo, depth[i]);
          hi = std::max(hi, depth[i]);
        }
      }
      if (hi - lo > 1e-9)
        throw TreeError(TreeErrc::not_ultrametric,
                        "root-to-leaf path lengths differ by " +
                            format_double(hi - lo));
      for (std::size_t i = 0; i < n; ++i) heights[i] = hi - depth[i];
      break;
    }
    case HeightConvention::explicit_heights: {
      for (std::size_t i = 0; i < n; ++i) {
        if (!flat.nodes[i]->height)
          throw TreeError(TreeErrc::missing_height_annotation,
                          "node without a height annotation (name '" +
                              flat.nodes[i]->name + "')");
        heights[i] = *flat.nodes[i]->height;
      }
      break;
    }
  }

  std::vector<RawNode> raw(n);
  for (std::size_t i = 0; i < n; ++i)
    raw[i] = RawNode{heights[i], flat.parent_of[i]};
  MergeTreeBuild build = build_merge_tree(raw);

  std::vector<NodeId> leaf_of_label;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    if (!flat.nodes[i]->children.empty()) continue;
    leaf_of_label.push_back(build.node_map[i]);
    names.push_back(flat.nodes[i]->name);
  }
  return PhyloTree(std::move(build.tree), std::move(leaf_of_label),
                   std::move(names));
}

namespace {

void append_name(std::string& out, const std::string& name) {
  const bool plain =
      !name.empty() &&
      name.find_first_of("(),;:[]' \t\n\r\v\f") == std::string::npos;
  if (plain) {
    out += name;
    return;
  }
  out += '\'';
  for (char c : name) {
    out += c;
    if (c == '\'') out += '\'';
  }
  out += '\'';
}

}  // namespace

std::string serialize(const PhyloTree& t) {
  const MergeTree& mt = t.tree();
  std::vector<int> label_of(mt.size(), -1);
  for (int k = 0; k < t.leaf_count(); ++k) label_of[t.leaf(k)] = k;

  std::string out;
  struct Frame {
    NodeId v;
    std::size_t next;
  };
  std::vector<Frame> stack{{mt.root(), 0}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    auto ch = mt.children(f.v);
    if (ch.empty()) {
      append_name(out, t.name(label_of[f.v]));
      out += "[&height=";
      out += format_double(mt.height(f.v));
      out += ']';
      stack.pop_back();
      continue;
    }
    if (f.next == 0) out += '(';
    if (f.next < ch.size()) {
      if (f.next > 0) out += ',';
      const NodeId c = ch[f.next];
      ++f.next;
      stack.push_back({c, 0});
    } else {
      out += ")[&height=";
      out += format_double(mt.height(f.v));
      out += ']';
      stack.pop_back();
    }
  }
  out += ';';
  return out;
}

}  // namespace cophtree
