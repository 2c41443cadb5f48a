#include "sct/pipeline.hpp"

#include <atomic>
#include <fstream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <set>
#include <thread>

#include "sct/comment_tree.hpp"
#include "sct/errors.hpp"
#include "sct/sct_build.hpp"
#include "sct/util.hpp"

namespace sct {

namespace {

std::set<std::string> load_failed_ids(const std::filesystem::path& log_path) {
  std::set<std::string> ids;
  std::ifstream in(log_path);
  if (!in) return ids;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto obj = nlohmann::json::parse(line, nullptr, false);
    if (!obj.is_discarded() && obj.is_object() && obj.contains("id") && obj["id"].is_string())
      ids.insert(obj["id"].get<std::string>());
  }
  return ids;
}

}  // namespace

std::filesystem::path sct_output_path(const std::filesystem::path& out_dir,
                                      const std::string& id) {
  return out_dir / "sct" / (filename_stem_for_id(id) + ".json");
}

ProcessSummary process_corpus(const std::vector<FunctionRecord>& records,
                              const ProcessConfig& cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir / "sct");
  const fs::path failure_log = cfg.out_dir / "failures.jsonl";
  std::set<std::string> previously_failed = load_failed_ids(failure_log);

  auto log = [&](const std::string& msg) {
    if (cfg.log) cfg.log(msg);
  };

  ProcessSummary summary;
  summary.total = records.size();

  std::vector<const FunctionRecord*> work;
  for (const FunctionRecord& rec : records) {
    if (fs::exists(sct_output_path(cfg.out_dir, rec.id)) || previously_failed.count(rec.id)) {
      ++summary.skipped;
    } else {
      work.push_back(&rec);
    }
  }
  log("process: " + std::to_string(work.size()) + " work items, " +
      std::to_string(summary.skipped) + " already done");

  std::mutex mu;  // guards summary counters and the failure log
  std::atomic<std::size_t> next{0};

  auto run_one = [&](const FunctionRecord& rec) {
    try {
      CommentedSource commented = commented_source_for(rec.code, cfg.provider);
      CommentTree ct = attach_comments(commented);
      SctDocument doc = build_sct(ct, cfg.rules);
      write_file_atomic(sct_output_path(cfg.out_dir, rec.id),
                        sct_record_json(doc, rec.id, rec.code) + "\n");
      std::lock_guard lock(mu);
      ++summary.processed;
    } catch (const SctError& e) {
      nlohmann::ordered_json entry;
      entry["id"] = rec.id;
      entry["reason"] = errc_name(e.code());
      entry["detail"] = e.what();
      std::lock_guard lock(mu);
      summary.failures.push_back({rec.id, errc_name(e.code())});
      std::ofstream out(failure_log, std::ios::app);
      out << entry.dump() << "\n";
    }
  };

  const int jobs = std::max(1, cfg.jobs);
  if (jobs == 1 || work.size() <= 1) {
    for (const FunctionRecord* rec : work) run_one(*rec);
  } else {
    std::vector<std::thread> pool;
    const int threads = std::min<std::size_t>(jobs, work.size());
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= work.size()) return;
          run_one(*work[i]);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  log("process: wrote " + std::to_string(summary.processed) + " records, " +
      std::to_string(summary.failures.size()) + " failures");
  for (const ProcessFailure& f : summary.failures)
    log("  failed " + f.id + ": " + f.reason);
  return summary;
}

}  // namespace sct
