#include <CLI11.hpp>
#include <iostream>
#include <nlohmann/json.hpp>

#include "sct/comment_tree.hpp"
#include "sct/corpus.hpp"
#include "sct/errors.hpp"
#include "sct/fusion.hpp"
#include "sct/parse.hpp"
#include "sct/pipeline.hpp"
#include "sct/provider.hpp"
#include "sct/sct_build.hpp"
#include "sct/util.hpp"

namespace {

using namespace sct;

SctRuleSet rules_for(const std::string& name) {
  if (name == "all" || name.empty()) return builtin_rules();
  auto category = category_from_name(name);
  if (!category) fail(Errc::MalformedLine, "unknown rule category: " + name);
  return builtin_rules().only_category(*category);
}

int cmd_parse(const std::string& in_path, bool dump, bool flat) {
  SyntaxTree tree = parse_function(read_file(in_path));
  if (dump) std::cout << tree.dump() << "\n";
  if (flat || !dump) std::cout << tree.flatten();
  if (tree.error_count)
    std::cerr << "parse errors: " << tree.error_count << "\n";
  return 0;
}

int cmd_build(const std::string& in_path, const std::string& comments_mode,
              const std::string& rules_name, const std::string& endpoint,
              const std::string& cache_dir, const std::string& model,
              const std::string& out_path, std::string id) {
  CommentProviderConfig provider;
  provider.kind = comments_mode == "endpoint" ? ProviderKind::remote_chat
                                              : ProviderKind::fixture;
  provider.endpoint = endpoint;
  provider.cache_dir = cache_dir;
  if (!model.empty()) provider.model_id = model;

  std::string source = read_file(in_path);
  if (id.empty()) id = std::filesystem::path(in_path).stem().string();

  CommentedSource commented = commented_source_for(source, provider);
  CommentTree ct = attach_comments(commented);
  SctDocument doc = build_sct(ct, rules_for(rules_name));
  std::string record = sct_record_json(doc, id, source) + "\n";
  if (out_path.empty()) {
    std::cout << record;
  } else {
    write_file_atomic(out_path, record);
    std::cerr << "wrote " << out_path << "\n";
  }
  return 0;
}

int cmd_ingest(const std::string& in_path, const std::string& out_path) {
  auto records = ingest(in_path);
  IngestSummary s = summarize(records);
  char ratio[32];
  std::snprintf(ratio, sizeof(ratio), "%.2f", s.ratio_percent);
  std::cout << "total " << s.total << ", vulnerable " << s.vulnerable << ", ratio " << ratio
            << "%\n";
  if (!out_path.empty()) {
    write_records_jsonl(out_path, records);
    std::cerr << "wrote " << out_path << "\n";
  }
  return 0;
}

int cmd_split(const std::string& in_path, std::uint64_t seed, const std::string& out_dir) {
  auto records = ingest(in_path);
  SplitResult result = split(records, seed);
  std::filesystem::path dir(out_dir);
  write_records_jsonl(dir / "train.jsonl", result.train);
  write_records_jsonl(dir / "valid.jsonl", result.valid);
  write_records_jsonl(dir / "test.jsonl", result.test);
  write_file_atomic(dir / "manifest.json", split_manifest_json(seed, result));
  std::cout << "train " << result.train.size() << ", valid " << result.valid.size()
            << ", test " << result.test.size() << "\n";
  return 0;
}

int cmd_process(const std::string& in_path, const std::string& out_dir,
                const std::string& provider_name, const std::string& cache_dir,
                int jobs, const std::string& endpoint, const std::string& rules_name) {
  ProcessConfig cfg;
  cfg.provider.kind =
      provider_name == "remote" ? ProviderKind::remote_chat : ProviderKind::fixture;
  cfg.provider.endpoint = endpoint;
  cfg.provider.cache_dir = cache_dir;
  cfg.rules = rules_for(rules_name);
  cfg.out_dir = out_dir;
  cfg.jobs = jobs;
  cfg.log = [](const std::string& msg) { std::cerr << msg << "\n"; };

  auto records = ingest(in_path);
  ProcessSummary summary = process_corpus(records, cfg);
  std::cout << "processed " << summary.processed << ", skipped " << summary.skipped
            << ", failures " << summary.failures.size() << " (of " << summary.total << ")\n";
  return summary.failures.empty() ? 0 : 2;
}

int cmd_eval(const std::string& pred, const std::string& gold) {
  EvalMetrics m = evaluate(pred, gold);
  std::cout << metrics_json(m) << "\n";
  return 0;
}

int cmd_rules_list() {
  const SctRuleSet& set = builtin_rules();
  for (const SctRule& r : set.rules) {
    std::cout << r.id << "\t" << category_name(r.category) << "\t" << r.target_type << "\t"
              << r.template_text << "\n";
  }
  return 0;
}

int cmd_fuse_demo(std::uint64_t seed, std::size_t l, std::size_t n, std::size_t heads,
                  int label) {
  std::vector<std::string> ct_tokens, code_tokens;
  for (std::size_t i = 0; i < l; ++i) {
    ct_tokens.push_back("ct" + std::to_string(i));
    code_tokens.push_back("c" + std::to_string(i));
  }
  EmbeddingMatrix h_ct = stub_embed(ct_tokens, n, seed);
  EmbeddingMatrix h_c = stub_embed(code_tokens, n, seed + 1);
  FusionParams params = random_params(n, heads, seed + 2);
  Prediction pred = fusion_forward(h_ct, h_c, params, label);
  double err = grad_check(h_ct, h_c, params, label);

  nlohmann::ordered_json out;
  out["seed"] = seed;
  out["l"] = l;
  out["n"] = n;
  out["heads"] = heads;
  out["label"] = label;
  out["prob"] = pred.prob;
  out["loss"] = pred.loss;
  out["grad_check_error"] = err;
  std::cout << out.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structured natural language comment trees for C/C++ functions"};
  app.require_subcommand(1);

  std::string in_path, out_path, out_dir, endpoint, cache_dir, model, pred, gold, id;
  std::string comments_mode = "cache";
  std::string rules_name = "all";
  std::string provider_name = "fixture";
  std::uint64_t seed = 1;
  int jobs = 1;
  int label = 1;
  std::size_t demo_l = 4, demo_n = 8, demo_heads = 8;
  bool dump = false, flat = false;

  auto* parse_cmd = app.add_subcommand("parse", "Parse a C function and print its tree");
  parse_cmd->add_option("--in", in_path, "input file")->required();
  parse_cmd->add_flag("--dump", dump, "print the s-expression dump");
  parse_cmd->add_flag("--flatten", flat, "print the flattened token text");

  auto* build_cmd = app.add_subcommand("build", "Build the SCT for one function");
  build_cmd->add_option("--in", in_path, "input file")->required();
  build_cmd->add_option("--comments", comments_mode, "cache|endpoint")
      ->check(CLI::IsMember({"cache", "endpoint"}));
  build_cmd->add_option("--rules", rules_name, "all|selection|iteration|jump|labeled")
      ->check(CLI::IsMember({"all", "selection", "iteration", "jump", "labeled"}));
  build_cmd->add_option("--endpoint", endpoint, "chat-completion endpoint URL");
  build_cmd->add_option("--cache", cache_dir, "comment cache directory");
  build_cmd->add_option("--model", model, "model id");
  build_cmd->add_option("--out", out_path, "output file (stdout if omitted)");
  build_cmd->add_option("--id", id, "record id (file stem if omitted)");

  auto* ingest_cmd = app.add_subcommand("ingest", "Read a JSONL corpus and print stats");
  ingest_cmd->add_option("--in", in_path, "corpus JSONL")->required();
  ingest_cmd->add_option("--out", out_path, "write normalized records here");

  auto* split_cmd = app.add_subcommand("split", "Seeded 8:1:1 train/valid/test split");
  split_cmd->add_option("--in", in_path, "corpus JSONL")->required();
  split_cmd->add_option("--seed", seed, "shuffle seed");
  split_cmd->add_option("--out-dir", out_dir, "output directory")->required();

  auto* process_cmd = app.add_subcommand("process", "Run the SCT pipeline over a corpus");
  process_cmd->add_option("--in", in_path, "corpus JSONL")->required();
  process_cmd->add_option("--out-dir", out_dir, "output directory")->required();
  process_cmd->add_option("--provider", provider_name, "remote|fixture")
      ->check(CLI::IsMember({"remote", "fixture"}));
  process_cmd->add_option("--cache", cache_dir, "comment cache directory");
  process_cmd->add_option("--jobs", jobs, "worker count");
  process_cmd->add_option("--endpoint", endpoint, "chat-completion endpoint URL");
  process_cmd->add_option("--rules", rules_name, "all|selection|iteration|jump|labeled")
      ->check(CLI::IsMember({"all", "selection", "iteration", "jump", "labeled"}));

  auto* eval_cmd = app.add_subcommand("eval", "Score predictions against gold labels");
  eval_cmd->add_option("--pred", pred, "prediction JSONL {id, pred}")->required();
  eval_cmd->add_option("--gold", gold, "gold JSONL with labels")->required();

  auto* rules_cmd = app.add_subcommand("rules", "Rule catalog");
  auto* rules_list = rules_cmd->add_subcommand("list", "List the built-in rules");

  auto* fuse_cmd = app.add_subcommand("fuse-demo", "Cross-attention numeric demo");
  fuse_cmd->add_option("--seed", seed, "rng seed");
  fuse_cmd->add_option("--l", demo_l, "sequence length");
  fuse_cmd->add_option("--n", demo_n, "embedding dim");
  fuse_cmd->add_option("--heads", demo_heads, "head count");
  fuse_cmd->add_option("--label", label, "gold label for the loss")->check(CLI::Range(0, 1));

  CLI11_PARSE(app, argc, argv);

  try {
    if (parse_cmd->parsed()) return cmd_parse(in_path, dump, flat);
    if (build_cmd->parsed())
      return cmd_build(in_path, comments_mode, rules_name, endpoint, cache_dir, model,
                       out_path, id);
    if (ingest_cmd->parsed()) return cmd_ingest(in_path, out_path);
    if (split_cmd->parsed()) return cmd_split(in_path, seed, out_dir);
    if (process_cmd->parsed())
      return cmd_process(in_path, out_dir, provider_name, cache_dir, jobs, endpoint,
                         rules_name);
    if (eval_cmd->parsed()) return cmd_eval(pred, gold);
    if (rules_cmd->parsed()) {
      if (rules_list->parsed() || rules_cmd->get_subcommands().empty()) return cmd_rules_list();
      return cmd_rules_list();
    }
    if (fuse_cmd->parsed()) return cmd_fuse_demo(seed, demo_l, demo_n, demo_heads, label);
  } catch (const SctError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
