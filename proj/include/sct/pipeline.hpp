#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "sct/corpus.hpp"
#include "sct/provider.hpp"
#include "sct/rules.hpp"

namespace sct {

struct ProcessConfig {
  CommentProviderConfig provider;
  SctRuleSet rules;
  std::filesystem::path out_dir;
  int jobs = 1;
  std::function<void(const std::string&)> log;  // progress lines; optional
};

struct ProcessFailure {
  std::string id;
  std::string reason;
};

struct ProcessSummary {
  std::size_t total = 0;
  std::size_t processed = 0;   // new outputs written this run
  std::size_t skipped = 0;     // outputs (or recorded failures) already present
  std::vector<ProcessFailure> failures;  // new failures this run
};

// Runs comments -> normalize -> attach -> build_sct -> render per record and
// writes one wire-format JSON file per record under <out_dir>/sct/. Failures
// are recorded per id in <out_dir>/failures.jsonl and never abort the batch.
// Reruns skip records with an existing output or a recorded failure.
ProcessSummary process_corpus(const std::vector<FunctionRecord>& records,
                              const ProcessConfig& cfg);

// Path of the output record for an id.
std::filesystem::path sct_output_path(const std::filesystem::path& out_dir,
                                      const std::string& id);

}  // namespace sct
