#include "sct/parse.hpp"

#include <array>
#include <set>
#include <string_view>

#include "sct/errors.hpp"
#include "sct/util.hpp"

namespace sct {

namespace {

enum class TokKind { Identifier, Keyword, Number, String, Char, Punct, Preproc };

struct Token {
  std::string text;
  TokKind kind = TokKind::Punct;
  int row = 0;
  int col = 0;
  std::size_t offset = 0;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> kw = {
      "if", "else", "while", "for", "do", "switch", "case", "default", "break",
      "continue", "return", "goto", "sizeof", "struct", "union", "enum", "class",
      "const", "volatile", "restrict", "static", "extern", "register", "auto",
      "typedef", "inline", "void", "int", "char", "short", "long", "float",
      "double", "signed", "unsigned", "bool", "true", "false", "nullptr",
      "namespace", "using", "new", "delete", "constexpr", "noexcept", "operator"};
  return kw;
}

bool is_primitive_type(std::string_view t) {
  static const std::set<std::string, std::less<>> types = {
      "void", "int", "char", "short", "long", "float", "double",
      "signed", "unsigned", "bool", "size_t", "ssize_t", "wchar_t",
      "int8_t", "int16_t", "int32_t", "int64_t",
      "uint8_t", "uint16_t", "uint32_t", "uint64_t", "uintptr_t", "intptr_t"};
  return types.count(t) > 0;
}

bool is_storage_class(std::string_view t) {
  return t == "static" || t == "extern" || t == "register" || t == "auto" ||
         t == "typedef" || t == "inline" || t == "constexpr";
}

bool is_type_qualifier(std::string_view t) {
  return t == "const" || t == "volatile" || t == "restrict";
}

bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

bool digit(char c) { return c >= '0' && c <= '9'; }

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> toks;
  int row = 0, col = 0;
  std::size_t i = 0;
  const std::size_t n = src.size();
  bool line_start = true;

  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count && i < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++row;
        col = 0;
        line_start = true;
      } else {
        ++col;
        if (src[i] != ' ' && src[i] != '\t' && src[i] != '\r') line_start = false;
      }
    }
  };

  static const std::array<std::string_view, 4> three = {"<<=", ">>=", "...", "->*"};
  static const std::array<std::string_view, 19> two = {
      "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=", "&&",
      "||", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "::"};

  while (i < n) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '/') {
      while (i < n && src[i] != '\n') advance(1);
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '*') {
      advance(2);
      while (i + 1 < n && !(src[i] == '*' && src[i + 1] == '/')) advance(1);
      advance(i + 1 < n ? 2 : 1);
      continue;
    }
    Token tok;
    tok.row = row;
    tok.col = col;
    tok.offset = i;
    if (c == '#' && line_start) {
      std::size_t start = i;
      while (i < n) {
        if (src[i] == '\\' && i + 1 < n && src[i + 1] == '\n') {
          advance(2);
          continue;
        }
        if (src[i] == '\n') break;
        advance(1);
      }
      tok.kind = TokKind::Preproc;
      tok.text = src.substr(start, i - start);
      while (!tok.text.empty() && (tok.text.back() == ' ' || tok.text.back() == '\t' || tok.text.back() == '\r'))
        tok.text.pop_back();
      toks.push_back(std::move(tok));
      continue;
    }
    if (ident_start(c)) {
      std::size_t start = i;
      while (i < n && ident_char(src[i])) advance(1);
      tok.text = src.substr(start, i - start);
      tok.kind = keywords().count(tok.text) ? TokKind::Keyword : TokKind::Identifier;
      toks.push_back(std::move(tok));
      continue;
    }
    if (digit(c) || (c == '.' && i + 1 < n && digit(src[i + 1]))) {
      std::size_t start = i;
      while (i < n) {
        char d = src[i];
        if (ident_char(d) || d == '.') {
          advance(1);
        } else if ((d == '+' || d == '-') && i > start &&
                   (src[i - 1] == 'e' || src[i - 1] == 'E' || src[i - 1] == 'p' || src[i - 1] == 'P')) {
          advance(1);
        } else {
          break;
        }
      }
      tok.kind = TokKind::Number;
      tok.text = src.substr(start, i - start);
      toks.push_back(std::move(tok));
      continue;
    }
    if (c == '"' || c == '\'') {
      char quote = c;
      std::size_t start = i;
      advance(1);
      while (i < n && src[i] != quote && src[i] != '\n') {
        if (src[i] == '\\' && i + 1 < n) advance(2);
        else advance(1);
      }
      if (i < n && src[i] == quote) advance(1);
      tok.kind = quote == '"' ? TokKind::String : TokKind::Char;
      tok.text = src.substr(start, i - start);
      toks.push_back(std::move(tok));
      continue;
    }
    std::string_view rest(src.data() + i, n - i);
    std::size_t len = 1;
    for (auto op : three)
      if (rest.substr(0, op.size()) == op) { len = 3; break; }
    if (len == 1)
      for (auto op : two)
        if (rest.substr(0, op.size()) == op) { len = 2; break; }
    tok.kind = TokKind::Punct;
    tok.text = src.substr(i, len);
    advance(len);
    toks.push_back(std::move(tok));
  }
  return toks;
}

class Parser {
 public:
  explicit Parser(const std::string& source) : src_(source), toks_(lex(source)) {
    tree_.source = source;
  }

  bool has_tokens() const { return !toks_.empty(); }

  SyntaxTree run() {
    NodeId root = begin_node("translation_unit");
    std::vector<NodeId> items;
    while (!at_end()) items.push_back(parse_external());
    finish_node(root, items);
    tree_.node(root).parent.reset();
    tree_.set_root(root);
    if (!tree_.node(root).children.empty()) {
      bool any_ok = false;
      for (NodeId child : tree_.node(root).children)
        if (tree_.node(child).node_type != "error") any_ok = true;
      if (!any_ok) fail(Errc::ParseFailed, "no recognizable structure");
    } else {
      fail(Errc::ParseFailed, "no content");
    }
    return std::move(tree_);
  }

 private:
  // --- token cursor -------------------------------------------------------
  bool at_end() const { return pos_ >= toks_.size(); }
  const Token& cur() const { return toks_[pos_]; }
  const Token& peek(std::size_t k = 1) const {
    static const Token eof{};
    return pos_ + k < toks_.size() ? toks_[pos_ + k] : eof;
  }
  bool is(std::string_view text) const { return !at_end() && cur().text == text; }
  bool is_kind(TokKind k) const { return !at_end() && cur().kind == k; }

  // --- node building ------------------------------------------------------
  NodeId begin_node(std::string type) {
    AstNode n;
    n.node_type = std::move(type);
    NodeId id = tree_.add_node(std::move(n));
    offsets_.resize(tree_.arena_size(), {0, 0});
    return id;
  }

  void finish_node(NodeId id, const std::vector<NodeId>& children) {
    AstNode& n = tree_.node(id);
    n.children = children;
    for (NodeId c : children) tree_.node(c).parent = id;
    if (!children.empty()) {
      const AstNode& first = tree_.node(children.front());
      const AstNode& last = tree_.node(children.back());
      n.span = {first.span.start_row, first.span.start_col, last.span.end_row, last.span.end_col};
      std::size_t start = offsets_[children.front()].first;
      std::size_t end = offsets_[children.back()].second;
      offsets_[id] = {start, end};
      n.value = src_.substr(start, end - start);
    }
  }

  NodeId leaf() { return leaf_as(leaf_type(cur())); }

  NodeId leaf_as(std::string type) {
    const Token& t = cur();
    AstNode n;
    n.node_type = std::move(type);
    n.value = t.text;
    int rows_in = 0;
    int last_len = 0;
    for (char ch : t.text) {
      if (ch == '\n') { ++rows_in; last_len = 0; }
      else ++last_len;
    }
    n.span = {t.row, t.col, t.row + rows_in,
              rows_in == 0 ? t.col + static_cast<int>(t.text.size()) : last_len};
    NodeId id = tree_.add_node(std::move(n));
    offsets_.resize(tree_.arena_size(), {0, 0});
    offsets_[id] = {t.offset, t.offset + t.text.size()};
    ++pos_;
    return id;
  }

  static std::string leaf_type(const Token& t) {
    switch (t.kind) {
      case TokKind::Identifier: return "identifier";
      case TokKind::Number: return "number_literal";
      case TokKind::String: return "string_literal";
      case TokKind::Char: return "char_literal";
      case TokKind::Preproc: return "preproc_directive";
      case TokKind::Keyword:
        if (is_primitive_type(t.text)) return "primitive_type";
        if (is_storage_class(t.text)) return "storage_class_specifier";
        if (is_type_qualifier(t.text)) return "type_qualifier";
        return t.text;
      case TokKind::Punct: return t.text;
    }
    return t.text;
  }

  // --- error recovery -----------------------------------------------------
  NodeId error_until_sync() {
    NodeId err = begin_node("error");
    std::vector<NodeId> kids;
    int depth = 0;
    while (!at_end()) {
      const std::string& t = cur().text;
      if (depth == 0 && (t == ";" || t == "}")) {
        if (t == ";") kids.push_back(leaf());
        break;
      }
      if (t == "(" || t == "[" || t == "{") ++depth;
      if (t == ")" || t == "]" || t == "}") --depth;
      kids.push_back(leaf());
    }
    if (kids.empty()) kids.push_back(leaf());  // always make progress
    finish_node(err, kids);
    ++tree_.error_count;
    return err;
  }

  // --- top level ----------------------------------------------------------
  NodeId parse_external() {
    if (is_kind(TokKind::Preproc)) return leaf();
    if (NodeId fd = try_function_definition(); fd != kNone) return fd;
    return parse_statement();
  }

  static constexpr NodeId kNone = static_cast<NodeId>(-1);

  bool looks_like_specifier(const Token& t) const {
    if (t.kind == TokKind::Keyword)
      return is_primitive_type(t.text) || is_storage_class(t.text) || is_type_qualifier(t.text) ||
             t.text == "struct" || t.text == "union" || t.text == "enum" || t.text == "class" ||
             t.text == "signed" || t.text == "unsigned";
    return t.kind == TokKind::Identifier;
  }

  // Scans ahead for `specifiers... name ( params ) { ...` without consuming
  // tokens; returns the node on success.
  NodeId try_function_definition() {
    std::size_t p = pos_;
    auto tok = [&](std::size_t k) -> const Token& {
      static const Token eof{};
      return k < toks_.size() ? toks_[k] : eof;
    };
    std::size_t spec_count = 0;
    while (p < toks_.size() &&
           (looks_like_specifier(tok(p)) || tok(p).text == "*" || tok(p).text == "&")) {
      ++p;
      ++spec_count;
    }
    // The name is the last identifier consumed by the specifier scan.
    if (spec_count < 2) return kNone;
    std::size_t name_idx = p - 1;
    if (tok(name_idx).kind != TokKind::Identifier || tok(p).text != "(") return kNone;
    std::size_t close = p;
    int depth = 0;
    while (close < toks_.size()) {
      if (tok(close).text == "(") ++depth;
      if (tok(close).text == ")") {
        --depth;
        if (depth == 0) break;
      }
      ++close;
    }
    if (close >= toks_.size()) return kNone;
    std::size_t after = close + 1;
    while (after < toks_.size() &&
           (tok(after).kind == TokKind::Identifier || tok(after).text == "const" ||
            tok(after).text == "noexcept"))
      ++after;
    if (after >= toks_.size() || tok(after).text != "{") return kNone;

    NodeId fd = begin_node("function_definition");
    std::vector<NodeId> kids;
    while (pos_ < name_idx) kids.push_back(leaf());
    kids.push_back(parse_function_declarator(close));
    while (pos_ < after) kids.push_back(leaf());
    kids.push_back(parse_compound());
    finish_node(fd, kids);
    return fd;
  }

  NodeId parse_function_declarator(std::size_t close_idx) {
    NodeId decl = begin_node("function_declarator");
    std::vector<NodeId> kids;
    kids.push_back(leaf_as("identifier"));
    NodeId params = begin_node("parameter_list");
    std::vector<NodeId> pl;
    pl.push_back(leaf());  // "("
    std::vector<NodeId> group;
    auto flush_param = [&] {
      if (group.empty()) return;
      NodeId p = begin_node("parameter_declaration");
      finish_node(p, group);
      pl.push_back(p);
      group.clear();
    };
    while (!at_end() && pos_ < close_idx) {
      if (is(",")) {
        flush_param();
        pl.push_back(leaf());
      } else {
        group.push_back(leaf());
      }
    }
    flush_param();
    if (is(")")) pl.push_back(leaf());
    finish_node(params, pl);
    kids.push_back(params);
    finish_node(decl, kids);
    return decl;
  }

  // --- statements ---------------------------------------------------------
  NodeId parse_compound() {
    NodeId block = begin_node("compound_statement");
    std::vector<NodeId> kids;
    kids.push_back(leaf());  // "{"
    while (!at_end() && !is("}")) kids.push_back(parse_statement());
    if (is("}")) kids.push_back(leaf());
    else ++tree_.error_count;  // unterminated block
    finish_node(block, kids);
    return block;
  }

  NodeId parse_statement() {
    if (at_end()) return error_until_sync();
    if (is_kind(TokKind::Preproc)) return leaf();
    const Token& t = cur();
    if (t.text == "{") return parse_compound();
    if (t.text == "if") return parse_if();
    if (t.text == "while") return parse_while();
    if (t.text == "do") return parse_do();
    if (t.text == "for") return parse_for();
    if (t.text == "switch") return parse_switch();
    if (t.text == "case") return parse_case();
    if (t.text == "default") return parse_default();
    if (t.text == "break") return parse_jump("break_statement");
    if (t.text == "continue") return parse_jump("continue_statement");
    if (t.text == "return") return parse_return();
    if (t.text == "goto") return parse_goto();
    if (t.text == ";") {
      NodeId st = begin_node("expression_statement");
      std::vector<NodeId> kids{leaf()};
      finish_node(st, kids);
      return st;
    }
    if (t.kind == TokKind::Identifier && peek().text == ":" && peek(2).text != ":")
      return parse_label();
    if (starts_declaration()) return parse_simple("declaration");
    if (t.kind == TokKind::Identifier || t.kind == TokKind::Number || t.kind == TokKind::String ||
        t.kind == TokKind::Char || t.text == "(" || t.text == "*" || t.text == "&" ||
        t.text == "!" || t.text == "~" || t.text == "++" || t.text == "--" || t.text == "-" ||
        t.text == "+" || t.kind == TokKind::Keyword)
      return parse_simple("expression_statement");
    return error_until_sync();
  }

  bool starts_declaration() const {
    const Token& t = cur();
    if (t.kind == TokKind::Keyword &&
        (is_primitive_type(t.text) || is_storage_class(t.text) || is_type_qualifier(t.text) ||
         t.text == "struct" || t.text == "union" || t.text == "enum" || t.text == "class"))
      return true;
    if (t.kind != TokKind::Identifier) return false;
    const Token& n1 = peek();
    if (n1.kind == TokKind::Identifier) return true;
    if ((n1.text == "*" || n1.text == "&") && peek(2).kind == TokKind::Identifier) {
      const std::string& after = peek(3).text;
      return after == ";" || after == "=" || after == "," || after == "[" || after == ")";
    }
    return false;
  }

  // declaration / expression_statement: token run up to a top-level ";".
  NodeId parse_simple(const char* type) {
    NodeId st = begin_node(type);
    std::vector<NodeId> kids;
    if (std::string_view(type) == "expression_statement") {
      if (auto expr = parse_expression_group({";"}); expr != kNone) kids.push_back(expr);
    } else {
      int depth = 0;
      while (!at_end()) {
        const std::string& tx = cur().text;
        if (depth == 0 && tx == ";") break;
        if (depth == 0 && tx == "}") break;
        if (tx == "(" || tx == "[" || tx == "{") ++depth;
        if (tx == ")" || tx == "]" || tx == "}") --depth;
        kids.push_back(leaf());
      }
    }
    if (is(";")) kids.push_back(leaf());
    else ++tree_.error_count;
    if (kids.empty()) return error_until_sync();
    finish_node(st, kids);
    return st;
  }

  NodeId parse_if() {
    NodeId st = begin_node("if_statement");
    std::vector<NodeId> kids;
    kids.push_back(leaf_as("if"));
    if (is("(")) kids.push_back(parse_parenthesized());
    else ++tree_.error_count;
    if (!at_end() && !is("}")) kids.push_back(parse_statement());
    if (is("else")) {
      kids.push_back(leaf_as("else"));
      if (!at_end() && !is("}")) kids.push_back(parse_statement());
    }
    finish_node(st, kids);
    return st;
  }

  NodeId parse_while() {
    NodeId st = begin_node("while_statement");
    std::vector<NodeId> kids;
    kids.push_back(leaf_as("while"));
    if (is("(")) kids.push_back(parse_parenthesized());
    else ++tree_.error_count;
    if (!at_end() && !is("}")) kids.push_back(parse_statement());
    finish_node(st, kids);
    return st;
  }

  NodeId parse_do() {
    NodeId st = begin_node("do_statement");
    std::vector<NodeId> kids;
    kids.push_back(leaf_as("do"));
    if (!at_end() && !is("}")) kids.push_back(parse_statement());
    if (is("while")) {
      kids.push_back(leaf_as("while"));
      if (is("(")) kids.push_back(parse_parenthesized());
      else ++tree_.error_count;
      if (is(";")) kids.push_back(leaf());
    } else {
      ++tree_.error_count;
    }
    finish_node(st, kids);
    return st;
  }

  NodeId parse_switch() {
    NodeId st = begin_node("switch_statement");
    std::vector<NodeId> kids;
    kids.push_back(leaf_as("switch"));
    if (is("(")) kids.push_back(parse_parenthesized());
    else ++tree_.error_count;
    if (!at_end() && !is("}")) kids.push_back(parse_statement());
    finish_node(st, kids);
    return st;
  }

  NodeId parse_case() {
    NodeId st = begin_node("case_statement");
    std::vector<NodeId> kids;
    kids.push_back(leaf_as("case"));
    if (auto expr = parse_expression_group({":"}); expr != kNone) kids.push_back(expr);
    if (is(":")) kids.push_back(leaf());
    else ++tree_.error_count;
    finish_node(st, kids);
    return st;
  }

  NodeId parse_default() {
    NodeId st = begin_node("case_statement");
    std::vector<NodeId> kids;
    kids.push_back(leaf_as("default"));
    if (is(":")) kids.push_back(leaf());
    else ++tree_.error_count;
    finish_node(st, kids);
    return st;
  }

  NodeId parse_jump(const char* type) {
    NodeId st = begin_node(type);
    std::vector<NodeId> kids;
    kids.push_back(leaf_as(cur().text));
    if (is(";")) kids.push_back(leaf());
    else ++tree_.error_count;
    finish_node(st, kids);
    return st;
  }

  NodeId parse_return() {
    NodeId st = begin_node("return_statement");
    std::vector<NodeId> kids;
    kids.push_back(leaf_as("return"));
    if (!is(";")) {
      if (auto expr = parse_expression_group({";", "}"}); expr != kNone) kids.push_back(expr);
    }
    if (is(";")) kids.push_back(leaf());
    else ++tree_.error_count;
    finish_node(st, kids);
    return st;
  }

  NodeId parse_goto() {
    NodeId st = begin_node("goto_statement");
    std::vector<NodeId> kids;
    kids.push_back(leaf_as("goto"));
    if (is_kind(TokKind::Identifier)) kids.push_back(leaf_as("statement_identifier"));
    else ++tree_.error_count;
    if (is(";")) kids.push_back(leaf());
    else ++tree_.error_count;
    finish_node(st, kids);
    return st;
  }

  NodeId parse_label() {
    NodeId st = begin_node("labeled_statement");
    std::vector<NodeId> kids;
    kids.push_back(leaf_as("statement_identifier"));
    kids.push_back(leaf());  // ":"
    if (!at_end() && !is("}")) kids.push_back(parse_statement());
    finish_node(st, kids);
    return st;
  }

  // --- expressions --------------------------------------------------------
  // Collects tokens up to (not including) a top-level stop token and wraps
  // them in a shallowly classified expression node. Single tokens stay bare.
  NodeId parse_expression_group(const std::set<std::string>& stops) {
    std::vector<NodeId> kids;
    std::vector<std::string> texts;
    int depth = 0;
    int ternary = 0;
    while (!at_end()) {
      const std::string& tx = cur().text;
      if (depth == 0 && stops.count(tx)) {
        if (tx == ":" && ternary > 0) {
          --ternary;
        } else {
          break;
        }
      }
      if (tx == "(" || tx == "[" || tx == "{") ++depth;
      if (tx == ")" || tx == "]" || tx == "}") {
        if (depth == 0) break;  // unbalanced close belongs to an outer scope
        --depth;
      }
      if (tx == "?") ++ternary;
      texts.push_back(tx);
      kids.push_back(leaf());
    }
    if (kids.empty()) return kNone;
    if (kids.size() == 1) return kids.front();
    NodeId expr = begin_node(classify_expression(texts));
    finish_node(expr, kids);
    return expr;
  }

  static std::string classify_expression(const std::vector<std::string>& texts) {
    int depth = 0;
    bool has_assign = false, has_binary = false, has_ternary = false;
    static const std::set<std::string> binary_ops = {
        "+", "-", "*", "/", "%", "<", ">", "<=", ">=", "==", "!=",
        "&&", "||", "&", "|", "^", "<<", ">>"};
    for (std::size_t i = 0; i < texts.size(); ++i) {
      const std::string& t = texts[i];
      if (t == "(" || t == "[" || t == "{") ++depth;
      else if (t == ")" || t == "]" || t == "}") --depth;
      else if (depth == 0) {
        if (t == "=") has_assign = true;
        else if (t == "?") has_ternary = true;
        else if (i > 0 && binary_ops.count(t)) has_binary = true;
      }
    }
    if (has_assign) return "assignment_expression";
    if (has_ternary) return "conditional_expression";
    if (texts.size() >= 2 && texts[1] == "(" && texts.back() == ")") return "call_expression";
    if (texts.front() == "(" && texts.back() == ")") return "parenthesized_expression";
    if (has_binary) return "binary_expression";
    if (texts.back() == "++" || texts.back() == "--") return "update_expression";
    return "expression";
  }

  NodeId parse_parenthesized() {
    // Find the matching ")" and detect the header form first.
    std::size_t close = pos_;
    int depth = 0;
    bool range_colon = false;
    int ternary = 0;
    std::size_t semis = 0;
    for (std::size_t p = pos_; p < toks_.size(); ++p) {
      const std::string& tx = toks_[p].text;
      if (tx == "(" || tx == "[" || tx == "{") ++depth;
      else if (tx == ")" || tx == "]" || tx == "}") {
        --depth;
        if (depth == 0) { close = p; break; }
      } else if (depth == 1) {
        if (tx == "?") ++ternary;
        else if (tx == ":" && ternary > 0) --ternary;
        else if (tx == ":") range_colon = true;
        else if (tx == ";") ++semis;
      }
    }
    last_paren_had_range_colon_ = range_colon && semis == 0;

    NodeId paren = begin_node("parenthesized_expression");
    std::vector<NodeId> kids;
    kids.push_back(leaf());  // "("
    if (semis > 0) {
      // for-loop header: init ; cond ; update
      while (!at_end() && pos_ <= close && !is(")")) {
        if (is(";")) {
          kids.push_back(leaf());
          continue;
        }
        if (auto g = parse_for_clause(); g != kNone) kids.push_back(g);
      }
    } else if (last_paren_had_range_colon_) {
      if (auto left = parse_for_clause_until({":"}); left != kNone) kids.push_back(left);
      if (is(":")) kids.push_back(leaf());
      if (auto right = parse_expression_group({")"}); right != kNone) kids.push_back(right);
    } else {
      if (auto inner = parse_expression_group({")"}); inner != kNone) kids.push_back(inner);
    }
    if (is(")")) kids.push_back(leaf());
    else ++tree_.error_count;
    finish_node(paren, kids);
    return paren;
  }

  NodeId parse_for_clause() { return parse_for_clause_until({";", ")"}); }

  NodeId parse_for_clause_until(const std::set<std::string>& stops) {
    bool decl_like = starts_declaration();
    std::vector<NodeId> kids;
    int depth = 0;
    while (!at_end()) {
      const std::string& tx = cur().text;
      if (depth == 0 && stops.count(tx)) break;
      if (depth == 0 && tx == ")") break;
      if (tx == "(" || tx == "[" || tx == "{") ++depth;
      if (tx == ")" || tx == "]" || tx == "}") --depth;
      kids.push_back(leaf());
    }
    if (kids.empty()) return kNone;
    if (kids.size() == 1 && !decl_like) return kids.front();
    std::vector<std::string> texts;
    texts.reserve(kids.size());
    for (NodeId k : kids) texts.push_back(tree_.node(k).value);
    NodeId group = begin_node(decl_like ? "declaration" : classify_expression(texts));
    finish_node(group, kids);
    return group;
  }

  NodeId parse_for() {
    NodeId kw = leaf_as("for");
    std::vector<NodeId> kids{kw};
    last_paren_had_range_colon_ = false;
    if (is("(")) {
      kids.push_back(parse_parenthesized());
    } else {
      ++tree_.error_count;
    }
    const char* type = last_paren_had_range_colon_ ? "for_range_loop" : "for_statement";
    NodeId st = begin_node(type);
    if (!at_end() && !is("}")) kids.push_back(parse_statement());
    finish_node(st, kids);
    return st;
  }

  const std::string& src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  SyntaxTree tree_;
  std::vector<std::pair<std::size_t, std::size_t>> offsets_;
  bool last_paren_had_range_colon_ = false;
};

}  // namespace

SyntaxTree parse_function(const std::string& source) {
  if (trim(source).empty()) fail(Errc::EmptySource, "source is blank");
  Parser parser(source);
  if (!parser.has_tokens()) fail(Errc::ParseFailed, "no tokens");
  return parser.run();
}

std::vector<std::string> code_tokens(const std::string& text) {
  std::vector<std::string> out;
  for (const Token& t : lex(text)) out.push_back(t.text);
  return out;
}

}  // namespace sct
