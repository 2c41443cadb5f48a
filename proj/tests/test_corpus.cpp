#include <doctest.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <random>
#include <set>
#include <unistd.h>

#include "sct/corpus.hpp"
#include "sct/errors.hpp"
#include "sct/util.hpp"

using namespace sct;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& content) {
  static std::atomic<int> counter{0};
  fs::path path = fs::temp_directory_path() /
                  ("sct_corpus_" + std::to_string(::getpid()) + "_" +
                   std::to_string(counter.fetch_add(1)) + ".jsonl");
  write_file_atomic(path, content);
  return path;
}

std::vector<FunctionRecord> make_records(std::size_t n, std::size_t vulnerable) {
  std::vector<FunctionRecord> records;
  for (std::size_t i = 0; i < n; ++i) {
    FunctionRecord r;
    r.id = "r" + std::to_string(i);
    r.code = "int f" + std::to_string(i) + "() { return " + std::to_string(i) + "; }";
    r.label = i < vulnerable ? 1 : 0;
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace

TEST_CASE("ingest: field aliases, ids, comment stripping") {
  fs::path path = temp_file(
      "{\"id\": \"a\", \"func\": \"int f() { return 1; } // note\", \"target\": 1}\n"
      "{\"code\": \"int g() { /* x */ return 0; }\", \"label\": 0}\n"
      "{\"id\": \"a\", \"func\": \"int h() { return 2; }\", \"target\": true}\n");
  auto records = ingest(path);
  REQUIRE(records.size() == 3);
  CHECK(records[0].id == "a");
  CHECK(records[0].label == 1);
  CHECK(records[0].code.find("// note") == std::string::npos);
  CHECK(records[1].id == "1");  // index when id is missing
  CHECK(records[1].code.find("/*") == std::string::npos);
  CHECK(records[2].id == "a_2");  // deterministic duplicate suffix
  CHECK(records[2].label == 1);

  IngestSummary s = summarize(records);
  CHECK(s.total == 3);
  CHECK(s.vulnerable == 2);
  CHECK(s.ratio_percent == doctest::Approx(200.0 / 3.0));
}

TEST_CASE("ingest: empty file gives empty list and zero summary") {
  auto records = ingest(temp_file(""));
  CHECK(records.empty());
  IngestSummary s = summarize(records);
  CHECK(s.total == 0);
  CHECK(s.vulnerable == 0);
  CHECK(s.ratio_percent == 0.0);
}

TEST_CASE("ingest: missing label reports the line number") {
  fs::path path = temp_file(
      "{\"func\": \"int f() {}\", \"target\": 0}\n"
      "{\"func\": \"int g() {}\"}\n");
  try {
    ingest(path);
    FAIL("expected MissingField");
  } catch (const SctError& e) {
    CHECK(e.code() == Errc::MissingField);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("ingest: malformed JSON and non-binary labels") {
  try {
    ingest(temp_file("{nope}\n"));
    FAIL("expected MalformedLine");
  } catch (const SctError& e) {
    CHECK(e.code() == Errc::MalformedLine);
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }
  CHECK_THROWS_AS(ingest(temp_file("{\"func\": \"f\", \"target\": 2}\n")), SctError);
}

TEST_CASE("split: exact tenths on 100 records") {
  auto records = make_records(100, 30);
  SplitResult r = split(records, 7);
  CHECK(r.train.size() == 80);
  CHECK(r.valid.size() == 10);
  CHECK(r.test.size() == 10);
}

TEST_CASE("split: deterministic for a seed, different across seeds") {
  auto records = make_records(50, 10);
  SplitResult a = split(records, 123);
  SplitResult b = split(records, 123);
  REQUIRE(a.train.size() == b.train.size());
  for (std::size_t i = 0; i < a.train.size(); ++i) CHECK(a.train[i].id == b.train[i].id);
  for (std::size_t i = 0; i < a.test.size(); ++i) CHECK(a.test[i].id == b.test[i].id);

  SplitResult c = split(records, 124);
  bool any_difference = false;
  for (std::size_t i = 0; i < a.train.size(); ++i)
    if (a.train[i].id != c.train[i].id) any_difference = true;
  CHECK(any_difference);
}

TEST_CASE("split: disjoint partitions cover all records") {
  auto records = make_records(53, 20);
  SplitResult r = split(records, 99);
  CHECK(r.train.size() == 53 - 2 * 5);
  CHECK(r.valid.size() == 5);
  CHECK(r.test.size() == 5);
  std::set<std::string> ids;
  for (const auto* part : {&r.train, &r.valid, &r.test})
    for (const auto& rec : *part) CHECK(ids.insert(rec.id).second);
  CHECK(ids.size() == records.size());
}

TEST_CASE("split: the published corpus size lands on 17889/2236/2236") {
  auto records = make_records(22361, 10067);
  IngestSummary s = summarize(records);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%.2f", s.ratio_percent);
  CHECK(std::string(buf) == "45.02");
  SplitResult r = split(records, 1);
  CHECK(r.train.size() == 17889);
  CHECK(r.valid.size() == 2236);
  CHECK(r.test.size() == 2236);
}

TEST_CASE("split: fewer than ten records is an error") {
  auto records = make_records(9, 3);
  try {
    split(records, 1);
    FAIL("expected TooFewRecords");
  } catch (const SctError& e) {
    CHECK(e.code() == Errc::TooFewRecords);
  }
}

TEST_CASE("split manifest records seed, ratio, counts, version") {
  auto records = make_records(20, 5);
  SplitResult r = split(records, 42);
  std::string manifest = split_manifest_json(42, r);
  CHECK(manifest.find("\"seed\": 42") != std::string::npos);
  CHECK(manifest.find("\"ratio\": \"8:1:1\"") != std::string::npos);
  CHECK(manifest.find("\"train\": 16") != std::string::npos);
  CHECK(manifest.find(kToolVersion) != std::string::npos);
}

TEST_CASE("metrics: hand-computed confusion arithmetic") {
  EvalMetrics perfect = metrics_from_counts(1, 0, 0, 1);
  CHECK(perfect.acc == 1.0);
  CHECK(perfect.pre == 1.0);
  CHECK(perfect.rec == 1.0);
  CHECK(perfect.f1 == 1.0);

  EvalMetrics m = metrics_from_counts(3, 1, 2, 4);
  CHECK(m.acc == doctest::Approx(0.7));
  CHECK(m.pre == doctest::Approx(0.75));
  CHECK(m.rec == doctest::Approx(0.6));
  CHECK(m.f1 == doctest::Approx(2.0 * 0.45 / 1.35));

  // all-negative predictions on a set with positives
  EvalMetrics zero = metrics_from_counts(0, 0, 5, 5);
  CHECK(zero.rec == 0.0);
  CHECK(zero.f1 == 0.0);
  CHECK(zero.pre == 0.0);  // denominator convention
}

TEST_CASE("metrics: formula oracle over random quadruples") {
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 2000; ++i) {
    long long tp = rng() % 1000, fp = rng() % 1000, fn = rng() % 1000, tn = rng() % 1000;
    EvalMetrics m = metrics_from_counts(tp, fp, fn, tn);
    long long total = tp + fp + fn + tn;
    double acc = total ? double(tp + tn) / double(total) : 0.0;
    double pre = (tp + fp) ? double(tp) / double(tp + fp) : 0.0;
    double rec = (tp + fn) ? double(tp) / double(tp + fn) : 0.0;
    double f1 = (pre + rec > 0) ? 2.0 * pre * rec / (pre + rec) : 0.0;
    CHECK(std::abs(m.acc - acc) < 1e-12);
    CHECK(std::abs(m.pre - pre) < 1e-12);
    CHECK(std::abs(m.rec - rec) < 1e-12);
    CHECK(std::abs(m.f1 - f1) < 1e-12);
  }
}

TEST_CASE("evaluate: file pairs, conventions, and errors") {
  fs::path gold = temp_file(
      "{\"id\": \"a\", \"func\": \"x\", \"target\": 1}\n"
      "{\"id\": \"b\", \"func\": \"x\", \"target\": 0}\n"
      "{\"id\": \"c\", \"func\": \"x\", \"target\": 1}\n"
      "{\"id\": \"d\", \"func\": \"x\", \"target\": 0}\n");
  fs::path pred = temp_file(
      "{\"id\": \"a\", \"pred\": 1}\n"
      "{\"id\": \"b\", \"pred\": 0}\n"
      "{\"id\": \"c\", \"pred\": 0}\n"
      "{\"id\": \"d\", \"pred\": 1}\n");
  EvalMetrics m = evaluate(pred, gold);
  CHECK(m.tp == 1);
  CHECK(m.tn == 1);
  CHECK(m.fn == 1);
  CHECK(m.fp == 1);
  CHECK(m.acc == doctest::Approx(0.5));

  // predictions equal to gold labels give accuracy 1
  fs::path same = temp_file(
      "{\"id\": \"a\", \"pred\": 1}\n"
      "{\"id\": \"b\", \"pred\": 0}\n"
      "{\"id\": \"c\", \"pred\": 1}\n"
      "{\"id\": \"d\", \"pred\": 0}\n");
  CHECK(evaluate(same, gold).acc == 1.0);

  fs::path missing = temp_file("{\"id\": \"a\", \"pred\": 1}\n");
  CHECK_THROWS_AS(evaluate(missing, gold), SctError);

  fs::path unknown = temp_file(
      "{\"id\": \"zz\", \"pred\": 1}\n");
  try {
    evaluate(unknown, gold);
    FAIL("expected IdMismatch");
  } catch (const SctError& e) {
    CHECK(e.code() == Errc::IdMismatch);
  }

  fs::path bad = temp_file(
      "{\"id\": \"a\", \"pred\": 3}\n"
      "{\"id\": \"b\", \"pred\": 0}\n"
      "{\"id\": \"c\", \"pred\": 1}\n"
      "{\"id\": \"d\", \"pred\": 0}\n");
  try {
    evaluate(bad, gold);
    FAIL("expected NonBinaryPrediction");
  } catch (const SctError& e) {
    CHECK(e.code() == Errc::NonBinaryPrediction);
  }
}

TEST_CASE("record round-trip through jsonl") {
  auto records = make_records(12, 4);
  records[3].project = "qemu";
  fs::path path = fs::temp_directory_path() / ("sct_rt_" + std::to_string(::getpid()) + ".jsonl");
  write_records_jsonl(path, records);
  auto back = ingest(path);
  REQUIRE(back.size() == records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].id == records[i].id);
    CHECK(back[i].label == records[i].label);
    CHECK(back[i].code == records[i].code);
  }
  CHECK(back[3].project == std::optional<std::string>("qemu"));
}
