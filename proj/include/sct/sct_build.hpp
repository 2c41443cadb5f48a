#pragma once

#include <string>
#include <vector>

#include "sct/comment_tree.hpp"
#include "sct/rules.hpp"

namespace sct {

struct RuleFiring {
  std::string rule_id;
  RuleCategory category;
  NodeId target = 0;
  NodeId replaced = 0;  // the node carrying the replacement text; synthetic
  std::string comment;  // the comment text consumed by the rule
  int target_row = 0;   // start row of the target statement (stripped code)
};

// A rule matched its target but could not bind a slot (void return,
// default case, ...). Diagnostics only; nothing in the tree changed.
struct RuleSkip {
  std::string rule_id;
  NodeId target = 0;
  std::string reason;
};

struct SctDocument {
  SyntaxTree tree;
  std::vector<RuleFiring> firings;
  std::vector<RuleSkip> skipped;
  std::string rendered;  // flatten(tree), computed at build time
};

// Runs the rule engine over a comment tree: pre-order traversal; a node
// fires when its type is in the active rule set and it has an attached
// comment. Condition-style rules rewrite the attached comment node into the
// filled template line (the structured comment precedes the untouched
// statement); break/continue combine the comment into the statement's own
// value. A slot node is never replaced twice.
SctDocument build_sct(const CommentTree& ct, const SctRuleSet& rules);

// Flattened text of the rewritten tree.
std::string render_sct(const SctDocument& doc);

// Wire-format record consumed by downstream pipelines:
// {id, code, sct_text, firings:[{rule, category, target_row}]}
std::string sct_record_json(const SctDocument& doc, const std::string& id,
                            const std::string& code);

}  // namespace sct
