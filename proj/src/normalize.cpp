#include "sct/normalize.hpp"

#include <vector>

#include "sct/ast.hpp"
#include "sct/errors.hpp"
#include "sct/util.hpp"

namespace sct {

namespace {

struct LineRec {
  std::vector<std::string> comments;
  std::string code;
};

void add_comment_lines(LineRec& rec, std::string_view block) {
  for (const std::string& line : split_lines(block)) {
    std::string_view t = trim(line);
    // Strip decorative leading asterisks common in /* * ... */ blocks.
    while (!t.empty() && t.front() == '*') t = trim(t.substr(1));
    if (!t.empty()) rec.comments.emplace_back(t);
  }
}

}  // namespace

CommentedSource normalize(const std::string& raw, CommentOrigin origin) {
  std::vector<LineRec> recs;
  recs.emplace_back();
  std::size_t cur_line = 0;

  auto line_at = [&](std::size_t idx) -> LineRec& {
    if (idx >= recs.size()) recs.resize(idx + 1);
    return recs[idx];
  };

  const std::size_t n = raw.size();
  std::size_t i = 0;
  while (i < n) {
    char c = raw[i];
    if (c == '\n') {
      ++cur_line;
      line_at(cur_line);
      ++i;
      continue;
    }
    if (c == '\r') {
      ++i;
      continue;
    }
    // Triple single quotes: python-style block comment.
    if (raw.compare(i, 3, "'''") == 0) {
      std::size_t start_line = cur_line;
      i += 3;
      std::size_t content_start = i;
      while (i < n && raw.compare(i, 3, "'''") != 0) {
        if (raw[i] == '\n') ++cur_line;
        ++i;
      }
      if (i >= n) fail(Errc::UnterminatedCommentBlock, "''' block never closed");
      add_comment_lines(line_at(start_line), raw.substr(content_start, i - content_start));
      i += 3;
      line_at(cur_line);
      continue;
    }
    if (c == '/' && i + 1 < n && raw[i + 1] == '*') {
      std::size_t start_line = cur_line;
      i += 2;
      std::size_t content_start = i;
      while (i + 1 < n && !(raw[i] == '*' && raw[i + 1] == '/')) {
        if (raw[i] == '\n') ++cur_line;
        ++i;
      }
      if (i + 1 >= n) fail(Errc::UnterminatedCommentBlock, "/* block never closed");
      add_comment_lines(line_at(start_line), raw.substr(content_start, i - content_start));
      i += 2;
      line_at(cur_line);
      continue;
    }
    if (c == '/' && i + 1 < n && raw[i + 1] == '/') {
      i += 2;
      std::size_t content_start = i;
      while (i < n && raw[i] != '\n') ++i;
      std::string text(trim(std::string_view(raw).substr(content_start, i - content_start)));
      if (!text.empty()) line_at(cur_line).comments.push_back(std::move(text));
      continue;
    }
    if (c == '"' || c == '\'') {
      char quote = c;
      std::string& code = line_at(cur_line).code;
      code.push_back(c);
      ++i;
      while (i < n && raw[i] != quote && raw[i] != '\n') {
        if (raw[i] == '\\' && i + 1 < n && raw[i + 1] != '\n') {
          code.push_back(raw[i]);
          code.push_back(raw[i + 1]);
          i += 2;
          continue;
        }
        code.push_back(raw[i]);
        ++i;
      }
      if (i < n && raw[i] == quote) {
        code.push_back(quote);
        ++i;
      }
      continue;
    }
    line_at(cur_line).code.push_back(c);
    ++i;
  }

  CommentedSource out;
  out.origin = origin;
  std::vector<std::string> lines;
  for (const LineRec& rec : recs) {
    for (const std::string& comment : rec.comments) {
      out.comment_rows[static_cast<int>(lines.size())] = comment;
      lines.push_back("// " + comment);
    }
    std::string_view code = rec.code;
    while (!code.empty() && (code.back() == ' ' || code.back() == '\t')) code.remove_suffix(1);
    if (!trim(code).empty()) lines.emplace_back(code);
  }
  for (std::size_t k = 0; k < lines.size(); ++k) {
    if (k) out.text += '\n';
    out.text += lines[k];
  }
  return out;
}

std::string strip_comment_rows(const CommentedSource& src) {
  std::vector<std::string> lines = split_lines(src.text);
  std::string out;
  bool first = true;
  for (std::size_t row = 0; row < lines.size(); ++row) {
    if (src.comment_rows.count(static_cast<int>(row))) continue;
    if (!first) out += '\n';
    out += lines[row];
    first = false;
  }
  return out;
}

bool code_tokens_preserved(const CommentedSource& src, const std::string& original) {
  return code_tokens(strip_comment_rows(src)) == code_tokens(original);
}

}  // namespace sct
