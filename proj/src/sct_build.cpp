#include "sct/sct_build.hpp"

#include <algorithm>
#include <array>
#include <nlohmann/json.hpp>
#include <set>

#include "sct/errors.hpp"
#include "sct/util.hpp"

namespace sct {

namespace {

std::optional<std::size_t> child_index(const SyntaxTree& tree, NodeId parent, NodeId child) {
  const auto& kids = tree.node(parent).children;
  auto it = std::find(kids.begin(), kids.end(), child);
  if (it == kids.end()) return std::nullopt;
  return static_cast<std::size_t>(it - kids.begin());
}

std::optional<NodeId> next_sibling(const SyntaxTree& tree, NodeId id) {
  const AstNode& n = tree.node(id);
  if (!n.parent) return std::nullopt;
  auto idx = child_index(tree, *n.parent, id);
  const auto& kids = tree.node(*n.parent).children;
  if (!idx || *idx + 1 >= kids.size()) return std::nullopt;
  return kids[*idx + 1];
}

bool has_else_branch(const SyntaxTree& tree, const AstNode& node) {
  for (NodeId c : node.children)
    if (tree.node(c).node_type == "else") return true;
  return false;
}

// Comment text sitting between the consequence and the "else" keyword, used
// to fill the if-else template's "else []" slot.
std::optional<std::string> else_slot_comment(const SyntaxTree& tree, const AstNode& node) {
  const auto& kids = node.children;
  for (std::size_t i = 1; i < kids.size(); ++i) {
    if (tree.node(kids[i]).node_type == "else" &&
        tree.node(kids[i - 1]).node_type == "comment")
      return tree.node(kids[i - 1]).value;
  }
  return std::nullopt;
}

// Splits a comment into up to three "init; condition; loop" segments,
// padding with the whole comment when fewer exist.
std::array<std::string, 3> for_segments(const std::string& comment) {
  std::vector<std::string> segs;
  std::size_t start = 0;
  while (segs.size() < 2) {
    std::size_t semi = comment.find(';', start);
    if (semi == std::string::npos) break;
    segs.emplace_back(trim(comment.substr(start, semi - start)));
    start = semi + 1;
  }
  segs.emplace_back(trim(comment.substr(start)));
  std::string whole(trim(comment));
  std::array<std::string, 3> out{whole, whole, whole};
  for (std::size_t i = 0; i < segs.size() && i < 3; ++i)
    if (!segs[i].empty()) out[i] = segs[i];
  return out;
}

const SctRule* rule_for_node(const SctRuleSet& rules, const SyntaxTree& tree,
                             const AstNode& node) {
  if (node.node_type == "if_statement") {
    const char* wanted = has_else_branch(tree, node) ? "if_else" : "if";
    for (const SctRule& r : rules.rules)
      if (r.id == wanted) return &r;
    return nullptr;
  }
  for (const SctRule& r : rules.rules)
    if (r.target_type == node.node_type) return &r;
  return nullptr;
}

class Builder {
 public:
  Builder(const CommentTree& ct, const SctRuleSet& rules) : rules_(rules) {
    doc_.tree = ct.tree;
  }

  SctDocument run() {
    for (NodeId id : doc_.tree.preorder()) {
      const AstNode& node = doc_.tree.node(id);
      if (!rules_.action_types.count(node.node_type)) continue;
      auto comment = comment_of(doc_.tree, id);
      if (!comment || trim(*comment).empty()) continue;
      const SctRule* rule = rule_for_node(rules_, doc_.tree, node);
      if (!rule) continue;
      apply(*rule, id, std::string(trim(*comment)));
    }
    doc_.rendered = doc_.tree.flatten();
    return std::move(doc_);
  }

 private:
  void apply(const SctRule& rule, NodeId target, const std::string& comment) {
    switch (rule.slot) {
      case RuleSlot::child_parenthesized:
      case RuleSlot::sibling_block_or_paren: {
        auto slot = bind_condition_slot(target);
        if (!slot) {
          skip(rule, target, "no unvisited parenthesized child or eligible sibling");
          return;
        }
        rewrite_comment(rule, target, *slot, comment, condition_text(rule, target, comment));
        return;
      }
      case RuleSlot::child_expression: {
        auto slot = find_child_not_of(target, {"return", ";", "comment"});
        if (!slot) {
          skip(rule, target, "return has no expression");
          return;
        }
        rewrite_comment(rule, target, *slot, comment, "return " + comment + " ;");
        return;
      }
      case RuleSlot::child_identifier: {
        auto slot = find_child_of(target, {"statement_identifier", "identifier"});
        if (!slot) {
          skip(rule, target, "goto has no label");
          return;
        }
        rewrite_comment(rule, target, *slot, comment, "goto " + comment + " ;");
        return;
      }
      case RuleSlot::case_constant: {
        if (find_child_of(target, {"default"})) {
          skip(rule, target, "default case has no constant expression");
          return;
        }
        auto slot = find_child_not_of(target, {"case", ":", "comment"});
        if (!slot) {
          skip(rule, target, "case has no constant expression");
          return;
        }
        rewrite_comment(rule, target, *slot, comment, "case " + comment + " :");
        return;
      }
      case RuleSlot::self_value: {
        if (visited_.count(target)) {
          skip(rule, target, "statement already rewritten");
          return;
        }
        combine_self_value(rule, target, comment);
        return;
      }
    }
  }

  // Child scan first, then the next-sibling fallback.
  std::optional<NodeId> bind_condition_slot(NodeId target) {
    for (NodeId c : doc_.tree.node(target).children) {
      if (doc_.tree.node(c).node_type == "parenthesized_expression" && !visited_.count(c))
        return c;
    }
    if (auto sib = next_sibling(doc_.tree, target)) {
      const std::string& t = doc_.tree.node(*sib).node_type;
      if ((t == "parenthesized_expression" || t == "compound_statement") &&
          !visited_.count(*sib))
        return sib;
    }
    return std::nullopt;
  }

  std::optional<NodeId> find_child_of(NodeId target, const std::set<std::string>& types) {
    for (NodeId c : doc_.tree.node(target).children)
      if (types.count(doc_.tree.node(c).node_type) && !visited_.count(c)) return c;
    return std::nullopt;
  }

  std::optional<NodeId> find_child_not_of(NodeId target, const std::set<std::string>& types) {
    for (NodeId c : doc_.tree.node(target).children)
      if (!types.count(doc_.tree.node(c).node_type) && !visited_.count(c)) return c;
    return std::nullopt;
  }

  std::string condition_text(const SctRule& rule, NodeId target, const std::string& comment) {
    if (rule.id == "if") return "if ( " + comment + " )";
    if (rule.id == "if_else") {
      auto else_comment = else_slot_comment(doc_.tree, doc_.tree.node(target));
      std::string text = "if ( " + comment + " ) else";
      if (else_comment && !trim(*else_comment).empty())
        text += " " + std::string(trim(*else_comment));
      return text;
    }
    if (rule.id == "switch") return "switch ( " + comment + " )";
    if (rule.id == "while") return "while ( " + comment + " )";
    if (rule.id == "for") {
      auto segs = for_segments(comment);
      return "for ( " + segs[0] + "; " + segs[1] + "; " + segs[2] + " )";
    }
    // range-based for
    return "for ( " + comment + " )";
  }

  // Rewrites the attached comment node into the filled template line; the
  // statement itself stays intact. The slot node is remembered so it is
  // never bound twice.
  void rewrite_comment(const SctRule& rule, NodeId target, NodeId slot,
                       const std::string& comment, const std::string& structured) {
    NodeId comment_node = preceding_comment(target);
    doc_.tree.node(comment_node).value = structured;
    visited_.insert(slot);
    visited_.insert(comment_node);
    doc_.firings.push_back({rule.id, rule.category, target, comment_node, comment,
                            doc_.tree.node(target).span.start_row});
  }

  // break/continue: the statement's value becomes "token ; // comment" and
  // the consumed comment node leaves the tree.
  void combine_self_value(const SctRule& rule, NodeId target, const std::string& comment) {
    NodeId comment_node = preceding_comment(target);
    AstNode& node = doc_.tree.node(target);
    std::string token = node.children.empty()
                            ? node.value
                            : doc_.tree.node(node.children.front()).value;
    node.value = token + " ; // " + comment;
    node.children.clear();
    node.is_synthetic = true;
    doc_.tree.detach(comment_node);
    visited_.insert(target);
    doc_.firings.push_back({rule.id, rule.category, target, target, comment,
                            node.span.start_row});
  }

  NodeId preceding_comment(NodeId target) {
    const AstNode& n = doc_.tree.node(target);
    auto idx = child_index(doc_.tree, *n.parent, target);
    return doc_.tree.node(*n.parent).children[*idx - 1];
  }

  void skip(const SctRule& rule, NodeId target, const char* reason) {
    doc_.skipped.push_back({rule.id, target, reason});
  }

  const SctRuleSet& rules_;
  SctDocument doc_;
  std::set<NodeId> visited_;
};

}  // namespace

SctDocument build_sct(const CommentTree& ct, const SctRuleSet& rules) {
  return Builder(ct, rules).run();
}

std::string render_sct(const SctDocument& doc) { return doc.tree.flatten(); }

std::string sct_record_json(const SctDocument& doc, const std::string& id,
                            const std::string& code) {
  nlohmann::ordered_json record;
  record["id"] = id;
  record["code"] = code;
  record["sct_text"] = doc.rendered;
  record["firings"] = nlohmann::ordered_json::array();
  for (const RuleFiring& f : doc.firings) {
    record["firings"].push_back({{"rule", f.rule_id},
                                 {"category", category_name(f.category)},
                                 {"target_row", f.target_row}});
  }
  return record.dump();
}

}  // namespace sct
