#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sct {

using NodeId = std::uint32_t;

// Zero-based source positions; end is exclusive (row/col just past the last
// character). Synthetic nodes carry an all-zero span.
struct Span {
  int start_row = 0;
  int start_col = 0;
  int end_row = 0;
  int end_col = 0;
};

struct AstNode {
  NodeId id = 0;
  std::string node_type;        // grammar type name, e.g. "if_statement"
  std::string value;            // source text covered by the node
  Span span;
  std::vector<NodeId> children; // ordered
  std::optional<NodeId> parent;
  bool is_synthetic = false;    // inserted after parsing (comments, replacements)
};

// A tree of AstNodes stored in an arena indexed by NodeId. Detached nodes may
// remain in the arena after mutations; traversal always starts from the root,
// so they are simply unreachable.
class SyntaxTree {
 public:
  NodeId root() const { return root_; }
  void set_root(NodeId id) { root_ = id; }

  const AstNode& node(NodeId id) const;
  AstNode& node(NodeId id);
  bool contains(NodeId id) const { return id < nodes_.size(); }
  std::size_t arena_size() const { return nodes_.size(); }

  NodeId add_node(AstNode node);

  // Inserts `id` into target's parent immediately before `target`.
  void insert_before(NodeId target, NodeId id);

  // Removes `id` from its parent's child list (the node stays in the arena).
  void detach(NodeId id);

  std::vector<NodeId> preorder() const;
  int depth(NodeId id) const;

  // In-order serialization: one output line per original source row, tokens
  // joined by single spaces; synthetic childless nodes emit their own line
  // ("// value" for comment nodes, the value verbatim otherwise). Ends with
  // a newline.
  std::string flatten() const;

  // Shallowest node (root excluded, synthetic excluded) whose span starts on
  // `row`, ties broken by smaller start column first, then smaller depth.
  std::optional<NodeId> first_node_on_row(int row) const;

  // S-expression debug dump: `(type [r,c]-[r,c] "value")` for leaves,
  // `(comment "text")` for comment nodes, nested children for the rest.
  std::string dump() const;

  // Throws SctError on any structural violation (cycles, orphan links,
  // missing parent back-references, empty node types, child span disorder).
  void validate() const;

  int line_count() const;

  std::string source;
  int error_count = 0;

 private:
  void dump_node(NodeId id, int indent, std::string& out) const;

  std::vector<AstNode> nodes_;
  NodeId root_ = 0;
};

// Token texts of `text` under the C lexer; used for whitespace-insensitive
// source comparisons.
std::vector<std::string> code_tokens(const std::string& text);

}  // namespace sct
