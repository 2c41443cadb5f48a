#include "sct/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <random>
#include <set>

#include "sct/errors.hpp"
#include "sct/util.hpp"

namespace sct {

namespace {

using nlohmann::json;

// Removes // and /* */ comments while preserving string/char literals and
// line numbering (block comments keep their newlines).
std::string strip_code_comments(const std::string& code) {
  std::string out;
  out.reserve(code.size());
  const std::size_t n = code.size();
  std::size_t i = 0;
  while (i < n) {
    char c = code[i];
    if (c == '\r') { ++i; continue; }
    if (c == '/' && i + 1 < n && code[i + 1] == '/') {
      while (i < n && code[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && code[i + 1] == '*') {
      i += 2;
      while (i + 1 < n && !(code[i] == '*' && code[i + 1] == '/')) {
        if (code[i] == '\n') out.push_back('\n');
        ++i;
      }
      i += (i + 1 < n) ? 2 : 1;
      continue;
    }
    if (c == '"' || c == '\'') {
      char quote = c;
      out.push_back(c);
      ++i;
      while (i < n && code[i] != quote && code[i] != '\n') {
        if (code[i] == '\\' && i + 1 < n) {
          out.push_back(code[i]);
          out.push_back(code[i + 1]);
          i += 2;
          continue;
        }
        out.push_back(code[i]);
        ++i;
      }
      if (i < n && code[i] == quote) {
        out.push_back(quote);
        ++i;
      }
      continue;
    }
    out.push_back(c);
    ++i;
  }
  return out;
}

std::optional<int> parse_binary(const json& v) {
  if (v.is_boolean()) return v.get<bool>() ? 1 : 0;
  if (v.is_number_integer() || v.is_number_unsigned()) {
    auto x = v.get<long long>();
    if (x == 0 || x == 1) return static_cast<int>(x);
    return std::nullopt;
  }
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s == "0") return 0;
    if (s == "1") return 1;
  }
  return std::nullopt;
}

std::optional<std::string> read_id(const json& obj) {
  if (!obj.contains("id")) return std::nullopt;
  const json& v = obj["id"];
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer() || v.is_number_unsigned())
    return std::to_string(v.get<long long>());
  return std::nullopt;
}

const json* field_alias(const json& obj, const char* a, const char* b) {
  if (obj.contains(a)) return &obj[a];
  if (obj.contains(b)) return &obj[b];
  return nullptr;
}

}  // namespace

std::vector<FunctionRecord> ingest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoError, "cannot open " + path.string());

  std::vector<FunctionRecord> records;
  std::set<std::string> used_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json obj = json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object())
      fail(Errc::MalformedLine, "line " + std::to_string(line_no) + " is not a JSON object");

    const json* code_field = field_alias(obj, "func", "code");
    if (!code_field || !code_field->is_string())
      fail(Errc::MissingField, "line " + std::to_string(line_no) + " has no func/code field");
    const json* label_field = field_alias(obj, "target", "label");
    if (!label_field)
      fail(Errc::MissingField, "line " + std::to_string(line_no) + " has no target/label field");
    auto label = parse_binary(*label_field);
    if (!label)
      fail(Errc::MalformedLine,
           "line " + std::to_string(line_no) + " has a non-binary target/label");

    FunctionRecord rec;
    rec.code = strip_code_comments(code_field->get<std::string>());
    if (trim(rec.code).empty())
      fail(Errc::MalformedLine, "line " + std::to_string(line_no) + " has empty code");
    rec.label = *label;
    if (obj.contains("project") && obj["project"].is_string())
      rec.project = obj["project"].get<std::string>();

    std::string id = read_id(obj).value_or(std::to_string(records.size()));
    if (used_ids.count(id)) {
      int suffix = 2;
      std::string candidate;
      do {
        candidate = id + "_" + std::to_string(suffix++);
      } while (used_ids.count(candidate));
      id = candidate;
    }
    used_ids.insert(id);
    rec.id = std::move(id);
    records.push_back(std::move(rec));
  }
  return records;
}

IngestSummary summarize(const std::vector<FunctionRecord>& records) {
  IngestSummary s;
  s.total = records.size();
  for (const auto& r : records)
    if (r.label == 1) ++s.vulnerable;
  s.ratio_percent =
      s.total ? 100.0 * static_cast<double>(s.vulnerable) / static_cast<double>(s.total) : 0.0;
  return s;
}

SplitResult split(const std::vector<FunctionRecord>& records, std::uint64_t seed) {
  const std::size_t n = records.size();
  if (n < 10) fail(Errc::TooFewRecords, "need at least 10 records, got " + std::to_string(n));
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  const std::size_t tenth = n / 10;
  const std::size_t train_n = n - 2 * tenth;
  SplitResult result;
  result.train.reserve(train_n);
  result.valid.reserve(tenth);
  result.test.reserve(tenth);
  for (std::size_t i = 0; i < n; ++i) {
    const FunctionRecord& rec = records[order[i]];
    if (i < train_n) result.train.push_back(rec);
    else if (i < train_n + tenth) result.valid.push_back(rec);
    else result.test.push_back(rec);
  }
  return result;
}

std::string split_manifest_json(std::uint64_t seed, const SplitResult& result) {
  nlohmann::ordered_json manifest;
  manifest["seed"] = seed;
  manifest["ratio"] = "8:1:1";
  manifest["counts"] = {{"train", result.train.size()},
                        {"valid", result.valid.size()},
                        {"test", result.test.size()}};
  manifest["tool_version"] = kToolVersion;
  return manifest.dump(2) + "\n";
}

EvalMetrics metrics_from_counts(long long tp, long long fp, long long fn, long long tn) {
  EvalMetrics m;
  m.tp = tp;
  m.fp = fp;
  m.fn = fn;
  m.tn = tn;
  const long long total = tp + fp + fn + tn;
  m.acc = total ? static_cast<double>(tp + tn) / static_cast<double>(total) : 0.0;
  m.pre = (tp + fp) ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  m.rec = (tp + fn) ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  m.f1 = (m.pre + m.rec > 0.0) ? 2.0 * m.pre * m.rec / (m.pre + m.rec) : 0.0;
  return m;
}

EvalMetrics evaluate(const std::filesystem::path& pred_file,
                     const std::filesystem::path& gold_file) {
  auto read_jsonl = [](const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::IoError, "cannot open " + path.string());
    std::vector<json> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (trim(line).empty()) continue;
      json obj = json::parse(line, nullptr, false);
      if (obj.is_discarded() || !obj.is_object())
        fail(Errc::MalformedLine,
             path.string() + " line " + std::to_string(line_no) + " is not a JSON object");
      rows.push_back(std::move(obj));
    }
    return rows;
  };

  std::map<std::string, int> gold;
  {
    auto rows = read_jsonl(gold_file);
    std::size_t index = 0;
    for (const json& obj : rows) {
      std::string id = read_id(obj).value_or(std::to_string(index));
      ++index;
      const json* label_field = field_alias(obj, "target", "label");
      if (!label_field) fail(Errc::MissingField, "gold record " + id + " has no label");
      auto label = parse_binary(*label_field);
      if (!label) fail(Errc::MalformedLine, "gold record " + id + " has a non-binary label");
      if (!gold.emplace(id, *label).second)
        fail(Errc::IdMismatch, "duplicate gold id " + id);
    }
  }

  long long tp = 0, fp = 0, fn = 0, tn = 0;
  std::set<std::string> seen;
  {
    auto rows = read_jsonl(pred_file);
    std::size_t index = 0;
    for (const json& obj : rows) {
      std::string id = read_id(obj).value_or(std::to_string(index));
      ++index;
      if (!obj.contains("pred"))
        fail(Errc::MissingField, "prediction record " + id + " has no pred field");
      auto pred = parse_binary(obj["pred"]);
      if (!pred) fail(Errc::NonBinaryPrediction, "prediction for " + id + " is not 0/1");
      auto it = gold.find(id);
      if (it == gold.end()) fail(Errc::IdMismatch, "prediction id " + id + " not in gold");
      if (!seen.insert(id).second) fail(Errc::IdMismatch, "duplicate prediction id " + id);
      if (*pred == 1 && it->second == 1) ++tp;
      else if (*pred == 1 && it->second == 0) ++fp;
      else if (*pred == 0 && it->second == 1) ++fn;
      else ++tn;
    }
  }
  if (seen.size() != gold.size())
    fail(Errc::IdMismatch, std::to_string(gold.size() - seen.size()) + " gold ids have no prediction");
  return metrics_from_counts(tp, fp, fn, tn);
}

std::string metrics_json(const EvalMetrics& m) {
  nlohmann::ordered_json obj;
  obj["tp"] = m.tp;
  obj["fp"] = m.fp;
  obj["fn"] = m.fn;
  obj["tn"] = m.tn;
  obj["acc"] = m.acc;
  obj["pre"] = m.pre;
  obj["rec"] = m.rec;
  obj["f1"] = m.f1;
  return obj.dump();
}

std::string record_json(const FunctionRecord& record) {
  nlohmann::ordered_json obj;
  obj["id"] = record.id;
  obj["func"] = record.code;
  obj["target"] = record.label;
  if (record.project) obj["project"] = *record.project;
  return obj.dump();
}

void write_records_jsonl(const std::filesystem::path& path,
                         const std::vector<FunctionRecord>& records) {
  std::string out;
  for (const auto& rec : records) {
    out += record_json(rec);
    out += '\n';
  }
  write_file_atomic(path, out);
}

}  // namespace sct
