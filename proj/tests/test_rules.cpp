#include <doctest.h>

#include <map>

#include "sct/rules.hpp"

using namespace sct;

TEST_CASE("builtin rules: eleven rules across four categories") {
  const SctRuleSet& set = builtin_rules();
  REQUIRE(set.rules.size() == 11);

  std::map<RuleCategory, int> per_category;
  for (const SctRule& r : set.rules) ++per_category[r.category];
  CHECK(per_category[RuleCategory::Selection] == 3);
  CHECK(per_category[RuleCategory::Iteration] == 3);
  CHECK(per_category[RuleCategory::Jump] == 4);
  CHECK(per_category[RuleCategory::Labeled] == 1);
}

TEST_CASE("builtin rules: templates carry the table wording") {
  const SctRuleSet& set = builtin_rules();
  auto find = [&](const std::string& id) -> const SctRule& {
    for (const SctRule& r : set.rules)
      if (r.id == id) return r;
    FAIL("missing rule ", id);
    return set.rules.front();
  };
  CHECK(find("return").template_text == "return [expression] ;");
  CHECK(find("goto").template_text == "goto [identifier] ;");
  CHECK(find("break").template_text == "[break] ;");
  CHECK(find("continue").template_text == "[continue] ;");
  CHECK(find("if").template_text == "if ( [condition] )");
  CHECK(find("while").template_text == "while ( [expression] )");
  CHECK(find("for").template_text ==
        "for ( [init-expression; condition-expression; loop-expression] )");
  CHECK(find("for_range").template_text == "for ( [for-range-declaration: expression] )");
  CHECK(find("case").template_text == "case [constant-expression] :");
  CHECK(find("switch").template_text == "switch ( [condition] )");
}

TEST_CASE("builtin rules: target types unique except the if pair") {
  const SctRuleSet& set = builtin_rules();
  std::map<std::string, int> per_target;
  for (const SctRule& r : set.rules) ++per_target[r.target_type];
  for (const auto& [target, count] : per_target) {
    if (target == "if_statement") CHECK(count == 2);
    else CHECK(count == 1);
  }
  CHECK(set.action_types.size() == 10);
  CHECK(set.action_types.count("if_statement"));
  CHECK(set.action_types.count("for_range_loop"));
}

TEST_CASE("rule set: category filtering partitions the rules") {
  const SctRuleSet& all = builtin_rules();
  std::size_t total = 0;
  for (RuleCategory c : {RuleCategory::Selection, RuleCategory::Iteration,
                         RuleCategory::Jump, RuleCategory::Labeled}) {
    SctRuleSet sub = all.only_category(c);
    total += sub.rules.size();
    for (const SctRule& r : sub.rules) CHECK(r.category == c);
    for (const SctRule& r : sub.rules) CHECK(sub.action_types.count(r.target_type));
  }
  CHECK(total == all.rules.size());
}

TEST_CASE("category names round-trip") {
  for (RuleCategory c : {RuleCategory::Selection, RuleCategory::Iteration,
                         RuleCategory::Jump, RuleCategory::Labeled}) {
    auto back = category_from_name(category_name(c));
    REQUIRE(back.has_value());
    CHECK(*back == c);
  }
  CHECK(!category_from_name("nonsense").has_value());
}
