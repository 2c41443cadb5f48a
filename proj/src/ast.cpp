#include "sct/ast.hpp"

#include <algorithm>
#include <set>

#include "sct/errors.hpp"

namespace sct {

const AstNode& SyntaxTree::node(NodeId id) const {
  if (id >= nodes_.size()) fail(Errc::UnknownNode, "node id " + std::to_string(id));
  return nodes_[id];
}

AstNode& SyntaxTree::node(NodeId id) {
  if (id >= nodes_.size()) fail(Errc::UnknownNode, "node id " + std::to_string(id));
  return nodes_[id];
}

NodeId SyntaxTree::add_node(AstNode node) {
  NodeId id = static_cast<NodeId>(nodes_.size());
  node.id = id;
  nodes_.push_back(std::move(node));
  return id;
}

void SyntaxTree::insert_before(NodeId target, NodeId id) {
  const AstNode& t = node(target);
  if (!t.parent) fail(Errc::UnknownNode, "cannot insert before the root");
  AstNode& parent = node(*t.parent);
  auto it = std::find(parent.children.begin(), parent.children.end(), target);
  if (it == parent.children.end())
    fail(Errc::UnknownNode, "target not listed in its parent");
  parent.children.insert(it, id);
  node(id).parent = parent.id;
}

void SyntaxTree::detach(NodeId id) {
  AstNode& n = node(id);
  if (!n.parent) fail(Errc::UnknownNode, "cannot detach the root");
  AstNode& parent = node(*n.parent);
  auto it = std::find(parent.children.begin(), parent.children.end(), id);
  if (it != parent.children.end()) parent.children.erase(it);
  n.parent.reset();
}

std::vector<NodeId> SyntaxTree::preorder() const {
  std::vector<NodeId> order;
  if (nodes_.empty()) return order;
  order.reserve(nodes_.size());
  std::vector<NodeId> stack{root_};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    order.push_back(id);
    const AstNode& n = node(id);
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
  }
  return order;
}

int SyntaxTree::depth(NodeId id) const {
  int d = 0;
  const AstNode* n = &node(id);
  while (n->parent) {
    ++d;
    n = &node(*n->parent);
  }
  return d;
}

std::string SyntaxTree::flatten() const {
  std::string out;
  std::string line;
  int current_row = -1;
  bool line_open = false;

  auto flush = [&] {
    if (line_open) {
      out += line;
      out += '\n';
      line.clear();
      line_open = false;
    }
    current_row = -1;
  };

  for (NodeId id : preorder()) {
    const AstNode& n = node(id);
    if (!n.children.empty()) continue;
    if (n.is_synthetic) {
      flush();
      if (n.node_type == "comment") {
        std::string_view v = n.value;
        if (v.substr(0, 2) == "//") {
          out += n.value;
        } else {
          out += "// ";
          out += n.value;
        }
      } else {
        out += n.value;
      }
      out += '\n';
      continue;
    }
    if (n.value.empty()) continue;
    if (!line_open || n.span.start_row != current_row) {
      flush();
      line_open = true;
      current_row = n.span.start_row;
      line = n.value;
    } else {
      line += ' ';
      line += n.value;
    }
  }
  flush();
  return out;
}

std::optional<NodeId> SyntaxTree::first_node_on_row(int row) const {
  if (row < 0 || row >= line_count()) fail(Errc::RowOutOfRange, "row " + std::to_string(row));
  std::optional<NodeId> best;
  int best_col = 0;
  int best_depth = 0;
  for (NodeId id : preorder()) {
    if (id == root_) continue;
    const AstNode& n = node(id);
    if (n.is_synthetic || n.span.start_row != row) continue;
    int d = depth(id);
    if (!best || n.span.start_col < best_col ||
        (n.span.start_col == best_col && d < best_depth)) {
      best = id;
      best_col = n.span.start_col;
      best_depth = d;
    }
  }
  return best;
}

int SyntaxTree::line_count() const {
  if (source.empty()) return 0;
  int count = 1;
  for (char c : source)
    if (c == '\n') ++count;
  return count;
}

namespace {

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

void SyntaxTree::dump_node(NodeId id, int indent, std::string& out) const {
  const AstNode& n = node(id);
  out.append(static_cast<std::size_t>(indent) * 2, ' ');
  if (n.node_type == "comment" && n.is_synthetic) {
    out += "(comment \"" + escape(n.value) + "\")";
    return;
  }
  out += "(" + n.node_type;
  if (!n.is_synthetic) {
    out += " [" + std::to_string(n.span.start_row) + "," + std::to_string(n.span.start_col) +
           "]-[" + std::to_string(n.span.end_row) + "," + std::to_string(n.span.end_col) + "]";
  }
  if (n.children.empty()) {
    out += " \"" + escape(n.value) + "\")";
    return;
  }
  for (NodeId child : n.children) {
    out += '\n';
    dump_node(child, indent + 1, out);
  }
  out += ')';
}

std::string SyntaxTree::dump() const {
  std::string out;
  if (!nodes_.empty()) dump_node(root_, 0, out);
  return out;
}

void SyntaxTree::validate() const {
  if (nodes_.empty()) fail(Errc::ParseFailed, "empty tree");
  if (root_ >= nodes_.size()) fail(Errc::UnknownNode, "root id out of range");
  if (node(root_).parent) fail(Errc::ParseFailed, "root has a parent");

  std::set<NodeId> seen;
  std::vector<NodeId> stack{root_};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second)
      fail(Errc::ParseFailed, "node " + std::to_string(id) + " reachable twice (cycle or shared child)");
    const AstNode& n = node(id);
    if (n.node_type.empty()) fail(Errc::ParseFailed, "node " + std::to_string(id) + " has empty type");
    if (id != root_) {
      if (!n.parent) fail(Errc::ParseFailed, "non-root node " + std::to_string(id) + " has no parent");
      const AstNode& p = node(*n.parent);
      auto count = std::count(p.children.begin(), p.children.end(), id);
      if (count != 1)
        fail(Errc::ParseFailed, "parent lists node " + std::to_string(id) + " " +
                                    std::to_string(count) + " times");
    }
    const AstNode* prev = nullptr;
    for (NodeId child : n.children) {
      const AstNode& c = node(child);
      if (!c.parent || *c.parent != id)
        fail(Errc::ParseFailed, "child " + std::to_string(child) + " does not point back to parent");
      if (!c.is_synthetic) {
        if (prev) {
          bool ordered = prev->span.end_row < c.span.start_row ||
                         (prev->span.end_row == c.span.start_row &&
                          prev->span.end_col <= c.span.start_col);
          if (!ordered)
            fail(Errc::ParseFailed,
                 "children of node " + std::to_string(id) + " out of span order at child " +
                     std::to_string(child));
        }
        prev = &c;
      }
      stack.push_back(child);
    }
  }
}

}  // namespace sct
