// msgplan: plan critique bundles into coherent messages.
//
//   msgplan plan case.json [--state s.json] [--dump-plans] [--explain] [--metrics]
//   msgplan corpus [dir] [--count N --seed S --overlap P]
//   msgplan gen --seed S [--count N] [--out dir]

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "msgplan/case_io.hpp"
#include "msgplan/corpus.hpp"
#include "msgplan/pipeline.hpp"

namespace fs = std::filesystem;
using namespace msgplan;

namespace {

std::string ids(const std::vector<CritiqueId>& v) {
  std::string out;
  for (const auto& id : v) out += (out.empty() ? "" : " ") + id.value;
  return out;
}

void print_explain(const CaseResult& r) {
  for (const auto& t : r.trace) std::cout << "# " << t << '\n';
  if (r.merges.empty()) return;
  std::cout << "# " << std::left << std::setw(24) << "merged" << std::right << std::setw(5) << "segs"
            << std::setw(5) << "t1" << std::setw(5) << "t2" << std::setw(5) << "t3" << std::setw(5)
            << "t4" << std::setw(8) << "total" << '\n';
  for (const auto& m : r.merges) {
    const auto& b = m.breakdown;
    std::cout << "# " << std::left << std::setw(24) << ids(m.candidate.merged_ids) << std::right
              << std::setw(5) << m.candidate.segments.size() << std::setw(5) << b.t1_goal_spread
              << std::setw(5) << b.t2_action_repetition_saved << std::setw(5)
              << b.t3_goal_repetitions << std::setw(5) << b.t4_critiques_merged << std::setw(8)
              << b.total << '\n';
  }
  std::cout << '\n';
}

int cmd_plan(const std::string& file, const std::string& state_file, bool dump, bool explain,
             bool metrics, bool json_metrics, const MergeWeights& w) {
  CaseBundle bundle = load_bundle(file);
  if (!state_file.empty() && fs::exists(state_file)) bundle.prior_state = load_state(state_file);
  const CaseResult r = run_case(bundle, w);

  if (explain) print_explain(r);
  for (std::size_t i = 0; i < r.messages.size(); ++i) {
    if (i) std::cout << '\n';
    if (dump) std::cout << dump_plan(r.messages[i].planned.plan);
    std::cout << r.messages[i].text() << '\n';
  }
  if (metrics) std::cout << '\n' << format_report(r.report);
  if (json_metrics) std::cout << report_to_json(r.report).dump(2) << '\n';
  if (!state_file.empty()) save_state(state_file, r.state);
  return 0;
}

int cmd_corpus(const std::string& dir, std::size_t count, const GeneratorConfig& cfg,
               bool json_metrics, const MergeWeights& w) {
  CorpusReport report;
  if (!dir.empty()) {
    report = run_corpus(fs::path(dir), w);
    if (report.rows.empty()) {
      std::cerr << "msgplan: no *.json cases in " << dir << '\n';
      return 1;
    }
  } else {
    std::vector<std::pair<std::string, CaseBundle>> cases;
    std::size_t i = 0;
    for (auto& b : generate_corpus(cfg, count)) {
      std::ostringstream name;
      name << "gen-" << std::setw(4) << std::setfill('0') << i++;
      cases.emplace_back(name.str(), std::move(b));
    }
    report = run_corpus(cases, w);
  }
  for (const auto& row : report.rows)
    if (!row.ok) std::cerr << "msgplan: warning: skipped " << row.name << ": " << row.error << '\n';
  std::cout << format_table(report);
  if (json_metrics) std::cout << report_to_json(report.aggregate).dump(2) << '\n';
  return report.failures == static_cast<int>(report.rows.size()) ? 1 : 0;
}

int cmd_gen(std::size_t count, const GeneratorConfig& cfg, const std::string& out) {
  const auto bundles = generate_corpus(cfg, count);
  if (out.empty()) {
    for (const auto& b : bundles) std::cout << bundle_to_json(b).dump(2) << '\n';
    return 0;
  }
  fs::create_directories(out);
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    std::ostringstream name;
    name << "case-" << std::setw(4) << std::setfill('0') << i << ".json";
    std::ofstream f(fs::path(out) / name.str());
    f << bundle_to_json(bundles[i]).dump(2) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Plan critiques into coherent messages"};
  app.require_subcommand(1);

  MergeWeights w;
  GeneratorConfig cfg;
  std::size_t corpus_count = 100, gen_count = 1;
  bool json_metrics = false;

  auto add_weights = [&](CLI::App* sub) {
    sub->add_option("--w1", w.w1, "weight: goal spread over segments")->capture_default_str();
    sub->add_option("--w2", w.w2, "weight: action repetitions saved")->capture_default_str();
    sub->add_option("--w3", w.w3, "weight: goal repetitions")->capture_default_str();
    sub->add_option("--w4", w.w4, "weight: critiques merged")->capture_default_str();
    sub->add_flag("--json-metrics", json_metrics, "emit the metrics report as JSON");
  };
  auto add_generator = [&](CLI::App* sub, std::size_t& count) {
    sub->add_option("--seed", cfg.seed, "generator seed")->capture_default_str();
    sub->add_option("--count", count, "number of generated bundles")->capture_default_str();
    sub->add_option("--overlap", cfg.overlap, "chance of reusing an action or goal")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
  };

  std::string file, state_file;
  bool dump = false, explain = false, metrics = false;
  auto* plan = app.add_subcommand("plan", "plan one case bundle");
  plan->add_option("bundle", file, "case bundle JSON")->required()->check(CLI::ExistingFile);
  plan->add_option("--state", state_file, "discourse state file, read if present and rewritten");
  plan->add_flag("--dump-plans", dump, "print each message's text plan");
  plan->add_flag("--explain", explain, "print rule firings and merge scores");
  plan->add_flag("--metrics", metrics, "append before/after metrics");
  add_weights(plan);

  std::string dir;
  auto* corpus = app.add_subcommand("corpus", "compare baseline and planned output over many cases");
  corpus->add_option("dir", dir, "directory of case bundles (default: generate)")
      ->check(CLI::ExistingDirectory);
  add_generator(corpus, corpus_count);
  add_weights(corpus);

  std::string out;
  auto* gen = app.add_subcommand("gen", "write random case bundles");
  gen->add_option("--out", out, "output directory (default: stdout)");
  add_generator(gen, gen_count);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*plan) return cmd_plan(file, state_file, dump, explain, metrics, json_metrics, w);
    if (*corpus) return cmd_corpus(dir, corpus_count, cfg, json_metrics, w);
    return cmd_gen(gen_count, cfg, out);
  } catch (const BundleError& e) {
    std::cerr << "msgplan: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "msgplan: " << e.what() << '\n';
    return 1;
  }
}
