#include "sct/comment_tree.hpp"

#include <algorithm>

#include "sct/errors.hpp"
#include "sct/parse.hpp"
#include "sct/util.hpp"

namespace sct {

namespace {

struct CommentGroup {
  int first_row = 0;            // normalized row of the first comment line
  std::vector<std::string> texts;
  std::optional<int> code_row;  // stripped-code row of the following code line
};

}  // namespace

CommentTree attach_comments(const CommentedSource& src) {
  std::vector<std::string> lines = split_lines(src.text);

  // Row mapping: normalized row -> row in the comment-stripped code.
  std::vector<int> code_row_of(lines.size(), -1);
  int next_code_row = 0;
  for (std::size_t row = 0; row < lines.size(); ++row) {
    if (!src.comment_rows.count(static_cast<int>(row)))
      code_row_of[row] = next_code_row++;
  }

  // Group consecutive comment rows; each group targets the next code row.
  std::vector<CommentGroup> groups;
  for (std::size_t row = 0; row < lines.size(); ++row) {
    auto it = src.comment_rows.find(static_cast<int>(row));
    if (it == src.comment_rows.end()) continue;
    if (!groups.empty() && groups.back().first_row +
            static_cast<int>(groups.back().texts.size()) == static_cast<int>(row)) {
      groups.back().texts.push_back(it->second);
    } else {
      CommentGroup g;
      g.first_row = static_cast<int>(row);
      g.texts.push_back(it->second);
      groups.push_back(std::move(g));
    }
  }
  for (CommentGroup& g : groups) {
    std::size_t next = static_cast<std::size_t>(g.first_row) + g.texts.size();
    if (next < lines.size() && code_row_of[next] >= 0) g.code_row = code_row_of[next];
  }

  CommentTree ct;
  ct.tree = parse_function(strip_comment_rows(src));

  for (const CommentGroup& g : groups) {
    std::string merged;
    for (std::size_t i = 0; i < g.texts.size(); ++i) {
      if (i) merged += "; ";
      merged += g.texts[i];
    }
    if (!g.code_row) {
      ct.unattached.push_back({g.first_row, merged});
      continue;
    }
    auto target = ct.tree.first_node_on_row(*g.code_row);
    if (!target) {
      ct.unattached.push_back({g.first_row, merged});
      continue;
    }
    if (auto existing = ct.attachments.find(*target); existing != ct.attachments.end()) {
      // A second group reached the same statement: merge into the one node.
      AstNode& node = ct.tree.node(existing->second);
      node.value += "; " + merged;
      continue;
    }
    AstNode comment;
    comment.node_type = "comment";
    comment.value = merged;
    comment.is_synthetic = true;
    NodeId comment_id = ct.tree.add_node(std::move(comment));
    ct.tree.insert_before(*target, comment_id);
    ct.attachments[*target] = comment_id;
  }
  return ct;
}

std::optional<std::string> comment_of(const SyntaxTree& tree, NodeId id) {
  const AstNode& n = tree.node(id);
  if (n.node_type == "comment") return std::nullopt;
  if (!n.parent) return std::nullopt;
  const AstNode& parent = tree.node(*n.parent);
  auto it = std::find(parent.children.begin(), parent.children.end(), id);
  if (it == parent.children.end() || it == parent.children.begin()) return std::nullopt;
  const AstNode& prev = tree.node(*(it - 1));
  if (prev.node_type != "comment") return std::nullopt;
  return prev.value;
}

std::optional<std::string> comment_of(const CommentTree& ct, NodeId id) {
  return comment_of(ct.tree, id);
}

}  // namespace sct
