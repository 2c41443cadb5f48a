#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sct {

enum class RuleCategory { Selection, Iteration, Jump, Labeled };

const char* category_name(RuleCategory c);
std::optional<RuleCategory> category_from_name(const std::string& name);

// Where a rule's bracketed slot binds on the target statement.
enum class RuleSlot {
  child_parenthesized,    // condition/header node among the children
  sibling_block_or_paren, // fallback: next sibling paren or block
  self_value,             // the statement's own value (break/continue)
  child_identifier,       // goto label
  child_expression,       // return expression
  case_constant,          // constant between "case" and ":"
};

struct SctRule {
  std::string id;           // "if", "if_else", "switch", ...
  RuleCategory category;
  std::string target_type;  // grammar node type the rule fires on
  RuleSlot slot;
  std::string template_text;
};

struct SctRuleSet {
  std::vector<SctRule> rules;
  std::set<std::string> action_types;  // target types of the active rules

  SctRuleSet only_category(RuleCategory c) const;
};

// The eleven built-in structured natural language rules:
// Selection (if, if-else, switch), Iteration (while, for, range-based for),
// Jump (break, continue, return, goto), Labeled (case).
const SctRuleSet& builtin_rules();

SctRuleSet make_rule_set(std::vector<SctRule> rules);

}  // namespace sct
