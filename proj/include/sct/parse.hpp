#pragma once

#include <string>

#include "sct/ast.hpp"

namespace sct {

// Parses one C/C++ function (or fragment) into a typed syntax tree. The
// grammar is error-tolerant: unrecognizable token runs are wrapped in
// "error" nodes and counted in SyntaxTree::error_count instead of aborting.
//
// Node type names follow the usual C/C++ grammar vocabulary consumed by the
// rule engine: "function_definition", "compound_statement", "if_statement",
// "while_statement", "do_statement", "for_statement", "for_range_loop",
// "switch_statement", "case_statement", "break_statement",
// "continue_statement", "return_statement", "goto_statement",
// "labeled_statement", "expression_statement", "declaration",
// "parenthesized_expression", plus leaf types ("identifier",
// "number_literal", "string_literal", ...; punctuation and keyword leaves use
// their own text as the type).
//
// Throws SctError{EmptySource} for blank input and SctError{ParseFailed}
// when nothing recognizable remains (every top-level item is an error node).
SyntaxTree parse_function(const std::string& source);

}  // namespace sct
