#include "sct/rules.hpp"

namespace sct {

const char* category_name(RuleCategory c) {
  switch (c) {
    case RuleCategory::Selection: return "selection";
    case RuleCategory::Iteration: return "iteration";
    case RuleCategory::Jump: return "jump";
    case RuleCategory::Labeled: return "labeled";
  }
  return "unknown";
}

std::optional<RuleCategory> category_from_name(const std::string& name) {
  if (name == "selection") return RuleCategory::Selection;
  if (name == "iteration") return RuleCategory::Iteration;
  if (name == "jump") return RuleCategory::Jump;
  if (name == "labeled") return RuleCategory::Labeled;
  return std::nullopt;
}

SctRuleSet make_rule_set(std::vector<SctRule> rules) {
  SctRuleSet set;
  set.rules = std::move(rules);
  for (const SctRule& r : set.rules) set.action_types.insert(r.target_type);
  return set;
}

SctRuleSet SctRuleSet::only_category(RuleCategory c) const {
  std::vector<SctRule> filtered;
  for (const SctRule& r : rules)
    if (r.category == c) filtered.push_back(r);
  return make_rule_set(std::move(filtered));
}

const SctRuleSet& builtin_rules() {
  static const SctRuleSet set = make_rule_set({
      {"if", RuleCategory::Selection, "if_statement", RuleSlot::child_parenthesized,
       "if ( [condition] )"},
      {"if_else", RuleCategory::Selection, "if_statement", RuleSlot::child_parenthesized,
       "if ( [condition] ) else []"},
      {"switch", RuleCategory::Selection, "switch_statement", RuleSlot::child_parenthesized,
       "switch ( [condition] )"},
      {"while", RuleCategory::Iteration, "while_statement", RuleSlot::child_parenthesized,
       "while ( [expression] )"},
      {"for", RuleCategory::Iteration, "for_statement", RuleSlot::child_parenthesized,
       "for ( [init-expression; condition-expression; loop-expression] )"},
      {"for_range", RuleCategory::Iteration, "for_range_loop", RuleSlot::child_parenthesized,
       "for ( [for-range-declaration: expression] )"},
      {"break", RuleCategory::Jump, "break_statement", RuleSlot::self_value, "[break] ;"},
      {"continue", RuleCategory::Jump, "continue_statement", RuleSlot::self_value,
       "[continue] ;"},
      {"return", RuleCategory::Jump, "return_statement", RuleSlot::child_expression,
       "return [expression] ;"},
      {"goto", RuleCategory::Jump, "goto_statement", RuleSlot::child_identifier,
       "goto [identifier] ;"},
      {"case", RuleCategory::Labeled, "case_statement", RuleSlot::case_constant,
       "case [constant-expression] :"},
  });
  return set;
}

}  // namespace sct
