#include <doctest.h>

#include <set>

#include "sct/ast.hpp"
#include "sct/errors.hpp"
#include "sct/parse.hpp"

using namespace sct;

namespace {

bool has_node_of_type(const SyntaxTree& tree, const std::string& type) {
  for (NodeId id : tree.preorder())
    if (tree.node(id).node_type == type) return true;
  return false;
}

NodeId first_of_type(const SyntaxTree& tree, const std::string& type) {
  for (NodeId id : tree.preorder())
    if (tree.node(id).node_type == type) return id;
  FAIL("no node of type ", type);
  return 0;
}

}  // namespace

TEST_CASE("parse: minimal function carries a return_statement") {
  SyntaxTree tree = parse_function("int f ( ) { return 0 ; }");
  CHECK(tree.error_count == 0);
  CHECK(has_node_of_type(tree, "function_definition"));
  CHECK(has_node_of_type(tree, "return_statement"));
  tree.validate();

  // Hand-derived expected dump; spans checked against the column layout of
  // the literal source above.
  const char* expected =
      "(translation_unit [0,0]-[0,24]\n"
      "  (function_definition [0,0]-[0,24]\n"
      "    (primitive_type [0,0]-[0,3] \"int\")\n"
      "    (function_declarator [0,4]-[0,9]\n"
      "      (identifier [0,4]-[0,5] \"f\")\n"
      "      (parameter_list [0,6]-[0,9]\n"
      "        (( [0,6]-[0,7] \"(\")\n"
      "        () [0,8]-[0,9] \")\")))\n"
      "    (compound_statement [0,10]-[0,24]\n"
      "      ({ [0,10]-[0,11] \"{\")\n"
      "      (return_statement [0,12]-[0,22]\n"
      "        (return [0,12]-[0,18] \"return\")\n"
      "        (number_literal [0,19]-[0,20] \"0\")\n"
      "        (; [0,21]-[0,22] \";\"))\n"
      "      (} [0,23]-[0,24] \"}\"))))";
  CHECK(tree.dump() == expected);
}

TEST_CASE("parse: empty source is rejected") {
  CHECK_THROWS_AS(parse_function(""), SctError);
  CHECK_THROWS_AS(parse_function("   \n\t  "), SctError);
  try {
    parse_function("");
  } catch (const SctError& e) {
    CHECK(e.code() == Errc::EmptySource);
  }
}

TEST_CASE("parse: pure garbage yields ParseFailed") {
  try {
    parse_function(")))");
    FAIL("expected ParseFailed");
  } catch (const SctError& e) {
    CHECK(e.code() == Errc::ParseFailed);
  }
}

TEST_CASE("parse: if with multi-operator condition") {
  SyntaxTree tree = parse_function("int f(){ if (a || b->x) return -1; }");
  CHECK(tree.error_count == 0);
  NodeId if_id = first_of_type(tree, "if_statement");
  bool paren_child = false;
  for (NodeId c : tree.node(if_id).children)
    if (tree.node(c).node_type == "parenthesized_expression") paren_child = true;
  CHECK(paren_child);
}

TEST_CASE("parse: error nodes tolerated without dropping text") {
  SyntaxTree tree = parse_function("int f() { int x = 1; @@@ ; return x; }");
  CHECK(tree.error_count > 0);
  CHECK(has_node_of_type(tree, "error"));
  CHECK(has_node_of_type(tree, "return_statement"));
  tree.validate();
  // Every token survives into the flattened text.
  CHECK(code_tokens(tree.flatten()) ==
        code_tokens("int f() { int x = 1; @@@ ; return x; }"));
}

TEST_CASE("flatten: round-trip token identity") {
  const char* sources[] = {
      "int f ( ) { return 0 ; }",
      "int f(){ if (a || b->x) return -1; }",
      "void g(char *s, int n) {\n  while (n-- > 0) {\n    *s++ = '\\0';\n  }\n}",
      "int h(int a) {\n  switch (a) {\n    case 0x1f: return 2;\n    default: break;\n  }\n  return a ? 1 : 0;\n}",
      "double k() {\n  double x = 1.5e-3;\n  for (int i = 0; i < 10; ++i) x *= 2.0;\n  do { x -= 1; } while (x > 0);\n  return x;\n}",
  };
  for (const char* src : sources) {
    CAPTURE(src);
    SyntaxTree tree = parse_function(src);
    CHECK(tree.error_count == 0);
    CHECK(code_tokens(tree.flatten()) == code_tokens(src));
  }
}

TEST_CASE("flatten: synthetic comment node renders on its own line") {
  SyntaxTree tree = parse_function("int f() {\n  return 1;\n}");
  NodeId ret = first_of_type(tree, "return_statement");
  AstNode comment;
  comment.node_type = "comment";
  comment.value = "checks bounds";
  comment.is_synthetic = true;
  NodeId cid = tree.add_node(std::move(comment));
  tree.insert_before(ret, cid);
  tree.validate();
  std::string flat = tree.flatten();
  CHECK(flat.find("// checks bounds\nreturn 1 ;") != std::string::npos);
}

TEST_CASE("flatten: root-only tree emits the root value") {
  SyntaxTree tree;
  AstNode root;
  root.node_type = "translation_unit";
  root.value = "x";
  tree.set_root(tree.add_node(std::move(root)));
  tree.source = "x";
  CHECK(tree.flatten() == "x\n");
}

TEST_CASE("first_node_on_row: statement rows, blank rows, bounds") {
  SyntaxTree tree = parse_function("int f ( ) {\nreturn 0 ;\n}");
  auto row0 = tree.first_node_on_row(0);
  REQUIRE(row0.has_value());
  CHECK(tree.node(*row0).node_type == "function_definition");

  auto row1 = tree.first_node_on_row(1);
  REQUIRE(row1.has_value());
  CHECK(tree.node(*row1).node_type == "return_statement");

  // Stability: same answer twice.
  CHECK(tree.first_node_on_row(1) == row1);

  CHECK_THROWS_AS(tree.first_node_on_row(17), SctError);
  CHECK_THROWS_AS(tree.first_node_on_row(-1), SctError);
}

TEST_CASE("first_node_on_row: blank row has no node") {
  SyntaxTree tree = parse_function("int f ( ) {\n\nreturn 0 ;\n}");
  CHECK(!tree.first_node_on_row(1).has_value());
  auto row2 = tree.first_node_on_row(2);
  REQUIRE(row2.has_value());
  CHECK(tree.node(*row2).node_type == "return_statement");
}

TEST_CASE("preorder: every node exactly once") {
  SyntaxTree tree = parse_function(
      "int f(int a, int b) {\n"
      "  int c = a + b;\n"
      "  if (c > 0) { c--; } else { c++; }\n"
      "  return c;\n"
      "}");
  auto order = tree.preorder();
  std::set<NodeId> seen(order.begin(), order.end());
  CHECK(order.size() == seen.size());
  CHECK(order.size() == tree.arena_size());
  CHECK(order.front() == tree.root());
}

TEST_CASE("preorder: parent precedes children") {
  SyntaxTree tree = parse_function("int f() { if (a) return 1; return 0; }");
  auto order = tree.preorder();
  std::vector<std::size_t> position(tree.arena_size());
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
  for (NodeId id : order)
    for (NodeId c : tree.node(id).children) CHECK(position[id] < position[c]);
}

TEST_CASE("validate: holds after insertion and value mutation") {
  SyntaxTree tree = parse_function("int f() { return g(); }");
  tree.validate();
  NodeId ret = first_of_type(tree, "return_statement");
  AstNode note;
  note.node_type = "comment";
  note.value = "calls g";
  note.is_synthetic = true;
  NodeId nid = tree.add_node(std::move(note));
  tree.insert_before(ret, nid);
  tree.validate();
  tree.node(nid).value = "changed";
  tree.validate();
  tree.detach(nid);
  tree.validate();
}

TEST_CASE("parse: statement variety") {
  SyntaxTree tree = parse_function(
      "static unsigned long hash(const char *s) {\n"
      "  unsigned long h = 5381;\n"
      "  int c;\n"
      "  while ((c = *s++)) {\n"
      "    h = ((h << 5) + h) + c;\n"
      "  }\n"
      "  goto out;\n"
      "out:\n"
      "  return h;\n"
      "}");
  CHECK(tree.error_count == 0);
  CHECK(has_node_of_type(tree, "while_statement"));
  CHECK(has_node_of_type(tree, "goto_statement"));
  CHECK(has_node_of_type(tree, "labeled_statement"));
  CHECK(code_tokens(tree.flatten()).size() > 20);
}

TEST_CASE("parse: range-based for gets its own node type") {
  SyntaxTree tree = parse_function("int sum() { int s = 0; for (int v : items) s += v; return s; }");
  CHECK(has_node_of_type(tree, "for_range_loop"));
  CHECK(!has_node_of_type(tree, "for_statement"));
  NodeId loop = first_of_type(tree, "for_range_loop");
  bool paren = false;
  for (NodeId c : tree.node(loop).children)
    if (tree.node(c).node_type == "parenthesized_expression") paren = true;
  CHECK(paren);
}

TEST_CASE("parse: classic for keeps header under a parenthesized child") {
  SyntaxTree tree = parse_function("int f(int n) { for (int i = 0; i < n; i++) n--; return n; }");
  NodeId loop = first_of_type(tree, "for_statement");
  bool paren = false;
  for (NodeId c : tree.node(loop).children)
    if (tree.node(c).node_type == "parenthesized_expression") paren = true;
  CHECK(paren);
}

TEST_CASE("parse: preprocessor lines survive as leaves") {
  SyntaxTree tree = parse_function(
      "int f(int a) {\n#ifdef DEBUG\n  a++;\n#endif\n  return a;\n}");
  CHECK(tree.error_count == 0);
  CHECK(has_node_of_type(tree, "preproc_directive"));
  std::string flat = tree.flatten();
  CHECK(flat.find("#ifdef DEBUG") != std::string::npos);
  CHECK(flat.find("#endif") != std::string::npos);
}
