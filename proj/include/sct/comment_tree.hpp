#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sct/ast.hpp"
#include "sct/normalize.hpp"

namespace sct {

struct UnattachedComment {
  int row = 0;  // row of the first comment line in the normalized text
  std::string text;
};

// An AST whose statements carry synthetic "comment" nodes inserted as the
// immediately preceding sibling of the statement they describe.
struct CommentTree {
  SyntaxTree tree;
  std::map<NodeId, NodeId> attachments;  // target node -> comment node
  std::vector<UnattachedComment> unattached;
};

// Parses the comment-stripped code of `src` and weaves each comment group
// into the tree: the target of a comment group is the first node on the next
// code row; consecutive comment lines for the same target merge into one
// node joined by "; ". Comments with no following code row land in
// `unattached` and the tree is left untouched by them.
CommentTree attach_comments(const CommentedSource& src);

// Value of the comment node attached to `id` (its immediately preceding
// sibling of type "comment"), if any. Comment nodes themselves have none.
std::optional<std::string> comment_of(const CommentTree& ct, NodeId id);

// Same lookup on a bare tree; used after the comment tree has been rewritten.
std::optional<std::string> comment_of(const SyntaxTree& tree, NodeId id);

}  // namespace sct
