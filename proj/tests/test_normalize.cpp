#include <doctest.h>

#include <random>

#include "sct/errors.hpp"
#include "sct/normalize.hpp"
#include "sct/util.hpp"

using namespace sct;

TEST_CASE("normalize: blank lines removed") {
  CHECK(normalize("a\n\nb").text == "a\nb");
  CHECK(normalize("\n\n\na\n\n").text == "a");
}

TEST_CASE("normalize: triple quotes become // lines") {
  CommentedSource out = normalize("'''checks x'''\nif (x) {}");
  CHECK(out.text == "// checks x\nif (x) {}");
  REQUIRE(out.comment_rows.count(0));
  CHECK(out.comment_rows.at(0) == "checks x");
}

TEST_CASE("normalize: multi-line triple-quote block") {
  CommentedSource out = normalize("'''\nfirst step\nsecond step\n'''\ny = 1;");
  CHECK(out.text == "// first step\n// second step\ny = 1;");
  CHECK(out.comment_rows.size() == 2);
}

TEST_CASE("normalize: /* */ blocks convert line by line") {
  CommentedSource out = normalize("/* alpha\n * beta */\nint x;");
  CHECK(out.text == "// alpha\n// beta\nint x;");
}

TEST_CASE("normalize: trailing comment hoists before its line") {
  CommentedSource out = normalize("int x = 1; // set x\nreturn x;");
  CHECK(out.text == "// set x\nint x = 1;\nreturn x;");
  CHECK(out.comment_rows.at(0) == "set x");
  CHECK(out.comment_rows.size() == 1);
}

TEST_CASE("normalize: comment markers inside strings stay code") {
  CommentedSource out = normalize("puts(\"http://x\");\nchar c = '\\'';");
  CHECK(out.comment_rows.empty());
  CHECK(out.text == "puts(\"http://x\");\nchar c = '\\'';");
}

TEST_CASE("normalize: idempotent") {
  const char* samples[] = {
      "a\n\nb",
      "'''checks x'''\nif (x) {}",
      "int x = 1; // set x\nreturn x;",
      "/* a\nb */\ncall();\n\n\n// done",
      "  indented(); // note\n\t\n}",
  };
  for (const char* raw : samples) {
    CAPTURE(raw);
    CommentedSource once = normalize(raw);
    CommentedSource twice = normalize(once.text);
    CHECK(once.text == twice.text);
    CHECK(once.comment_rows == twice.comment_rows);
  }
}

TEST_CASE("normalize: unterminated blocks are reported") {
  try {
    normalize("'''oops\nnext line");
    FAIL("expected UnterminatedCommentBlock");
  } catch (const SctError& e) {
    CHECK(e.code() == Errc::UnterminatedCommentBlock);
  }
  CHECK_THROWS_AS(normalize("/* never closed"), SctError);
}

TEST_CASE("normalize: comment_rows indexes every comment line") {
  CommentedSource out = normalize("// one\nx();\n// two\n// three\ny();");
  CHECK(out.comment_rows.size() == 3);
  for (const auto& [row, text] : out.comment_rows) {
    auto lines = split_lines(out.text);
    REQUIRE(row < static_cast<int>(lines.size()));
    CHECK(lines[row] == "// " + text);
  }
}

TEST_CASE("code preservation check") {
  std::string original = "int f() { return 1; }";
  CommentedSource good = normalize("// doc\nint f() { return 1; }");
  CHECK(code_tokens_preserved(good, original));
  CommentedSource bad = normalize("// doc\nint f() { return 2; }");
  CHECK(!code_tokens_preserved(bad, original));
}

TEST_CASE("normalize: randomized property sweep") {
  // idempotence, zero blank lines, no ''' left behind, comment rows start //
  std::mt19937 rng(20240811);
  const char* pieces[] = {
      "int x = 1;",   "y += x;",        "call(a, b);",  "",
      "   ",          "// note",        "'''block'''",  "z--; // trailing",
      "/* multi */",  "if (x) {",       "}",            "s = \"//not\";",
      "'''\nraw\n'''", "w = v / u;",
  };
  for (int iter = 0; iter < 300; ++iter) {
    std::string raw;
    int lines = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < lines; ++i) {
      raw += pieces[rng() % (sizeof(pieces) / sizeof(pieces[0]))];
      raw += '\n';
    }
    CAPTURE(raw);
    CommentedSource out = normalize(raw);
    CHECK(out.text.find("'''") == std::string::npos);
    for (const std::string& line : split_lines(out.text))
      CHECK(!trim(line).empty());
    CommentedSource again = normalize(out.text);
    CHECK(again.text == out.text);
    CHECK(again.comment_rows == out.comment_rows);
  }
}
