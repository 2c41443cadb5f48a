#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sct {

inline constexpr const char* kToolVersion = "0.1.0";

struct FunctionRecord {
  std::string id;
  std::string code;   // comment-stripped function source
  int label = 0;      // 1 = vulnerable
  std::optional<std::string> project;
};

struct IngestSummary {
  std::size_t total = 0;
  std::size_t vulnerable = 0;
  double ratio_percent = 0.0;  // vulnerable / total * 100
};

// Reads a JSONL corpus. Each line is an object with fields
// {id?, func|code, target|label, project?}; field aliases cover the common
// public-corpus conventions. Missing ids become the record index; duplicate
// ids get a deterministic "_<n>" suffix. Pre-existing comments are stripped
// from the code.
// Errors: MalformedLine(line_no), MissingField(line_no).
std::vector<FunctionRecord> ingest(const std::filesystem::path& path);

IngestSummary summarize(const std::vector<FunctionRecord>& records);

struct SplitResult {
  std::vector<FunctionRecord> train, valid, test;
};

// Seeded-shuffle 8:1:1 partition: valid and test get floor(n/10) each, the
// remainder goes to train. Throws TooFewRecords below 10 records.
SplitResult split(const std::vector<FunctionRecord>& records, std::uint64_t seed);

// Manifest describing a split: {seed, ratio:"8:1:1", counts, tool_version}.
std::string split_manifest_json(std::uint64_t seed, const SplitResult& result);

struct EvalMetrics {
  long long tp = 0, fp = 0, fn = 0, tn = 0;
  double acc = 0.0, pre = 0.0, rec = 0.0, f1 = 0.0;
};

// Acc/Pre/Rec/F1 from confusion counts; any zero denominator yields 0.
EvalMetrics metrics_from_counts(long long tp, long long fp, long long fn, long long tn);

// Scores a prediction file (JSONL {id, pred}) against gold labels (JSONL
// with {id?, label|target}). Ids must match one-to-one (IdMismatch);
// predictions must be 0/1 (NonBinaryPrediction).
EvalMetrics evaluate(const std::filesystem::path& pred_file,
                     const std::filesystem::path& gold_file);

std::string metrics_json(const EvalMetrics& m);

// Serialization used for split outputs and fixtures.
std::string record_json(const FunctionRecord& record);
void write_records_jsonl(const std::filesystem::path& path,
                         const std::vector<FunctionRecord>& records);

}  // namespace sct
