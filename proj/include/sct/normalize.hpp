#pragma once

#include <map>
#include <string>

namespace sct {

enum class CommentOrigin { remote, cache, fixture };

// Normalized code-with-comments text: no blank lines, every comment on its
// own line starting with "//".
struct CommentedSource {
  std::string text;
  std::map<int, std::string> comment_rows;  // row -> comment text (no "//")
  CommentOrigin origin = CommentOrigin::fixture;
};

// Normalization pass over provider output:
//  - blank lines removed
//  - '''...''' blocks and /* ... */ blocks converted line-by-line to // lines
//  - comments sharing a line with code are hoisted onto their own line
//    before that line's code
// Comment markers inside string/char literals are left alone. Throws
// SctError{UnterminatedCommentBlock} when a block is still open at EOF.
CommentedSource normalize(const std::string& raw,
                          CommentOrigin origin = CommentOrigin::fixture);

// True when the comment-stripped token stream of `src` matches the token
// stream of `original` (the provider did not alter the code).
bool code_tokens_preserved(const CommentedSource& src, const std::string& original);

// Comment-free lines of `src` (the code rows, in order).
std::string strip_comment_rows(const CommentedSource& src);

}  // namespace sct
