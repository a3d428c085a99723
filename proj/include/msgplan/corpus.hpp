#pragma once

// Synthetic case generation and corpus-level evaluation (baseline vs.
// planned output).

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "msgplan/critique_model.hpp"
#include "msgplan/pipeline.hpp"

namespace msgplan {

struct GeneratorConfig {
  std::uint64_t seed = 1;
  int min_critiques = 2;
  int max_critiques = 6;
  int action_pool = 10;  // upper bound; each bundle draws 3..action_pool
  int goal_pool = 4;
  double overlap = 0.6;  // chance a step reuses an action or goal already in play
  double omitted_share = 0.7;  // remaining critiques are scheduling/preference kinds
};

// Small deterministic helpers over mt19937_64; the standard distributions are
// not reproducible across library implementations.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t n);            // [0, n)
  int between(int lo, int hi);                     // [lo, hi]
  bool chance(double p);

 private:
  std::mt19937_64 engine_;
};

CaseBundle generate_bundle(SeededRng& rng, const GeneratorConfig& config);
// `count` bundles from one seed; bundle i is the same whatever `count` is.
std::vector<CaseBundle> generate_corpus(const GeneratorConfig& config, std::size_t count);

struct CorpusRow {
  std::string name;
  bool ok = false;
  std::string error;
  MetricsReport report;
};

struct CorpusReport {
  std::vector<CorpusRow> rows;
  MetricsReport aggregate;  // sum over the rows that ran
  int failures = 0;
};

CorpusReport run_corpus(const std::vector<std::pair<std::string, CaseBundle>>& cases,
                        const MergeWeights& weights = {});
// Every *.json file in the directory, by file name; unreadable cases become
// failed rows.
CorpusReport run_corpus(const std::filesystem::path& directory, const MergeWeights& weights = {});

// Aligned text table, one row per case plus a total row.
std::string format_table(const CorpusReport& report);
std::string format_report(const MetricsReport& report);

}  // namespace msgplan
