#include "sct/provider.hpp"

#include <httplib.h>

#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <nlohmann/json.hpp>
#include <thread>

#include "sct/errors.hpp"
#include "sct/util.hpp"

namespace sct {

namespace {

using nlohmann::json;

// Bounds concurrent in-flight remote requests across worker threads.
class InflightGate {
 public:
  void acquire(int limit) {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return count_ < std::max(1, limit); });
    ++count_;
  }
  void release() {
    {
      std::lock_guard lock(mu_);
      --count_;
    }
    cv_.notify_one();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  int count_ = 0;
};

InflightGate g_gate;

struct GateGuard {
  explicit GateGuard(int limit) { g_gate.acquire(limit); }
  ~GateGuard() { g_gate.release(); }
};

std::string strip_markdown_fences(const std::string& text) {
  std::vector<std::string> lines = split_lines(text);
  std::size_t begin = 0;
  std::size_t end = lines.size();
  if (!lines.empty() && trim(lines.front()).substr(0, 3) == "```") ++begin;
  if (end > begin && trim(lines[end - 1]) == "```") --end;
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) out += '\n';
    out += lines[i];
  }
  return out;
}

// Splits "http://host:port/path" into a client base and a request path.
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
  std::size_t scheme_end = endpoint.find("://");
  std::size_t path_start = std::string::npos;
  if (scheme_end != std::string::npos)
    path_start = endpoint.find('/', scheme_end + 3);
  else
    path_start = endpoint.find('/');
  if (path_start == std::string::npos) return {endpoint, "/v1/chat/completions"};
  return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

std::string fetch_remote(const std::string& source, const CommentProviderConfig& cfg) {
  const char* key = std::getenv("SCT_API_KEY");
  if (cfg.endpoint.empty())
    fail(Errc::ProviderUnavailable, "remote provider needs --endpoint");
  if (!key || !*key)
    fail(Errc::ProviderUnavailable, "SCT_API_KEY is not set");

  auto [base, path] = split_endpoint(cfg.endpoint);
  json body = {
      {"model", cfg.model_id},
      {"messages",
       {{{"role", "system"}, {"content", cfg.system_prompt}},
        {{"role", "user"}, {"content", source}}}},
      {"temperature", cfg.temperature},
  };
  httplib::Headers headers = {{"Authorization", std::string("Bearer ") + key}};

  std::string last_error = "no attempt made";
  int attempts = std::max(0, cfg.max_retries) + 1;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    if (attempt > 0) {
      auto delay = std::chrono::milliseconds(100LL << std::min(attempt, 5));
      std::this_thread::sleep_for(delay);
    }
    GateGuard gate(cfg.max_inflight);
    httplib::Client client(base);
    client.set_connection_timeout(10);
    client.set_read_timeout(60);
    auto res = client.Post(path, headers, body.dump(), "application/json");
    if (!res) {
      last_error = "connection failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200)
      fail(Errc::ProviderUnavailable, "HTTP " + std::to_string(res->status) + ": " + res->body);

    json reply = json::parse(res->body, nullptr, false);
    if (reply.is_discarded())
      fail(Errc::MalformedResponse, "reply is not JSON");
    if (!reply.contains("choices") || !reply["choices"].is_array() || reply["choices"].empty())
      fail(Errc::MalformedResponse, "reply has no choices");
    const json& msg = reply["choices"][0].value("message", json::object());
    if (!msg.contains("content") || !msg["content"].is_string())
      fail(Errc::MalformedResponse, "choice has no message content");
    std::string content = strip_markdown_fences(msg["content"].get<std::string>());
    if (trim(content).empty())
      fail(Errc::MalformedResponse, "empty code content");
    return content;
  }
  fail(Errc::ProviderUnavailable, last_error);
}

}  // namespace

std::filesystem::path comment_cache_path(const std::filesystem::path& cache_dir,
                                         const std::string& source) {
  std::string hash = sha256_hex(source);
  return cache_dir / hash.substr(0, 2) / (hash + ".txt");
}

RawComments generate_comments(const std::string& source, const CommentProviderConfig& cfg) {
  if (trim(source).empty()) fail(Errc::EmptySource, "source is blank");
  if (cfg.temperature < 0.0)
    fail(Errc::ProviderUnavailable, "temperature must be >= 0");

  if (!cfg.cache_dir.empty()) {
    auto path = comment_cache_path(cfg.cache_dir, source);
    if (std::filesystem::exists(path))
      return {read_file(path), CommentOrigin::cache};
  }

  if (cfg.kind == ProviderKind::fixture)
    fail(Errc::CacheMiss, "no cached comments for this source");

  std::string text = fetch_remote(source, cfg);
  if (!cfg.cache_dir.empty())
    write_file_atomic(comment_cache_path(cfg.cache_dir, source), text);
  return {text, CommentOrigin::remote};
}

CommentedSource commented_source_for(const std::string& source,
                                     const CommentProviderConfig& cfg) {
  RawComments raw = generate_comments(source, cfg);
  CommentedSource commented = normalize(raw.text, raw.origin);
  if (!code_tokens_preserved(commented, source)) {
    // Provider mutated the code: keep the original with zero comments.
    CommentedSource original = normalize(source, raw.origin);
    CommentedSource fallback;
    fallback.origin = raw.origin;
    fallback.text = strip_comment_rows(original);
    return fallback;
  }
  return commented;
}

}  // namespace sct
