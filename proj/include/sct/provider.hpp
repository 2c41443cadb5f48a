#pragma once

#include <filesystem>
#include <string>

#include "sct/normalize.hpp"

namespace sct {

enum class ProviderKind { remote_chat, fixture };

struct CommentProviderConfig {
  ProviderKind kind = ProviderKind::fixture;
  std::string endpoint;  // remote only, e.g. http://host:port/v1/chat/completions
  std::string model_id = "gpt-3.5-turbo-0301";
  std::string system_prompt =
      "You are a code assistant. Add a one-line // comment above each "
      "statement of the given C function. Return only code.";
  double temperature = 0.0;
  int max_retries = 2;
  int max_inflight = 4;
  std::filesystem::path cache_dir;
};

struct RawComments {
  std::string text;
  CommentOrigin origin = CommentOrigin::fixture;
};

// Cache location for a given source snippet:
// <cache_dir>/<first two hex chars>/<sha256 of the exact source bytes>.txt
std::filesystem::path comment_cache_path(const std::filesystem::path& cache_dir,
                                         const std::string& source);

// Returns the provider's code-with-comments output verbatim. Cache hits
// short-circuit the network; remote responses are cached before returning.
// The remote credential comes from the SCT_API_KEY environment variable.
//
// Errors: CacheMiss (fixture kind, no entry), ProviderUnavailable (remote
// unreachable / misconfigured, after retries), MalformedResponse (no code
// content extractable from the reply).
RawComments generate_comments(const std::string& source, const CommentProviderConfig& cfg);

// generate_comments + normalize + code-preservation check. When the provider
// altered the code tokens, falls back to the normalized original source with
// zero comments so downstream stages always anchor to real code rows.
CommentedSource commented_source_for(const std::string& source,
                                     const CommentProviderConfig& cfg);

}  // namespace sct
