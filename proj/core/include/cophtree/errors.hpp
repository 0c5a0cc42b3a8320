#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cophtree {

// Lexical/grammar failures while reading Newick text. `position` is the byte
// offset into the input the parser was looking at when it gave up.
enum class ParseErrc {
  syntax,
  unterminated_quote,
  missing_semicolon,
  negative_branch_length,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrc code, std::size_t position, const std::string& message)
      : std::runtime_error(message), code_(code), position_(position) {}

  ParseErrc code() const noexcept { return code_; }
  std::size_t position() const noexcept { return position_; }

 private:
  ParseErrc code_;
  std::size_t position_;
};

// Structural failures: the input was well-formed text but does not describe a
// valid tree, or two inputs cannot be compared with each other.
enum class TreeErrc {
  empty_input,
  cycle_detected,
  multiple_roots,
  non_monotone_edge,
  non_finite_height,
  label_count_mismatch,
  duplicate_label,
  unnamed_leaf,
  not_ultrametric,
  missing_height_annotation,
  missing_branch_length,
  dimension_mismatch,
  label_set_mismatch,
};

class TreeError : public std::runtime_error {
 public:
  TreeError(TreeErrc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  TreeErrc code() const noexcept { return code_; }

 private:
  TreeErrc code_;
};

}  // namespace cophtree
