#include "msgplan/corpus.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "msgplan/case_io.hpp"

namespace msgplan {

std::uint64_t SeededRng::below(std::uint64_t n) {
  if (n == 0) return 0;
  // Rejection sampling keeps the result unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do x = engine_();
  while (x >= limit);
  return x % n;
}

int SeededRng::between(int lo, int hi) {
  if (hi <= lo) return lo;
  return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

bool SeededRng::chance(double p) {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p;
}

namespace {

struct Verb {
  const char* imperative;
  const char* gerund;
};
constexpr Verb kVerbs[] = {{"check", "checking"}, {"order", "ordering"}, {"give", "giving"},
                           {"repair", "repairing"}, {"assess", "assessing"}};

template <typename T>
const T& pick(SeededRng& rng, const std::vector<T>& v) {
  return v[rng.below(v.size())];
}

class Builder {
 public:
  Builder(SeededRng& rng, const GeneratorConfig& cfg) : rng_(rng), cfg_(cfg) {}

  CaseBundle build() {
    const int actions = rng_.between(3, std::max(3, cfg_.action_pool));
    const int goals = rng_.between(1, std::max(1, cfg_.goal_pool));
    for (int i = 0; i < actions; ++i) {
      const std::string key = "a" + std::to_string(i);
      LexiconEntry e;
      if (rng_.chance(0.5)) {
        e = {"do <art> procedure " + std::to_string(i), "doing <art> procedure " + std::to_string(i), true};
      } else {
        const Verb& v = kVerbs[rng_.below(std::size(kVerbs))];
        e = {std::string(v.imperative) + " item " + std::to_string(i),
             std::string(v.gerund) + " item " + std::to_string(i), false};
      }
      b_.lexicon.entries.emplace(key, std::move(e));
      pool_.emplace_back(key);
    }
    for (int j = 0; j < goals; ++j) {
      GoalId id("g" + std::to_string(j));
      b_.lexicon.goals.emplace(id, GoalDef{id, "treating injury " + std::to_string(j),
                                           "treat injury " + std::to_string(j)});
      goal_pool_.push_back(id);
    }

    const int n = rng_.between(cfg_.min_critiques, cfg_.max_critiques);
    for (int k = 0; k < n; ++k) {
      Critique c;
      c.id = CritiqueId("c" + std::to_string(k + 1));
      c.order_index = static_cast<std::uint32_t>(k + 1);
      c.kind = rng_.chance(cfg_.omitted_share) ? CritiqueKind{omitted()} : other();
      b_.critiques.push_back(std::move(c));
    }
    for (const auto& a : pool_)
      if (rng_.chance(0.2)) b_.cbmr.push_back(a);
    b_.options.severity_labels = !rng_.chance(0.2);
    return std::move(b_);
  }

 private:
  // An action not in `exclude`, preferring ones already in play.
  ActionId action(const std::vector<ActionId>& exclude) {
    auto allowed = [&](const ActionId& a) {
      return std::find(exclude.begin(), exclude.end(), a) == exclude.end();
    };
    std::vector<ActionId> reuse;
    for (const auto& a : used_)
      if (allowed(a)) reuse.push_back(a);
    ActionId out;
    if (!reuse.empty() && rng_.chance(cfg_.overlap)) {
      out = pick(rng_, reuse);
    } else {
      std::vector<ActionId> fresh;
      for (const auto& a : pool_)
        if (allowed(a)) fresh.push_back(a);
      out = pick(rng_, fresh);
    }
    if (std::find(used_.begin(), used_.end(), out) == used_.end()) used_.push_back(out);
    return out;
  }

  GoalId goal(const std::vector<GoalId>& exclude) {
    std::vector<GoalId> reuse, fresh;
    for (const auto& g : goal_pool_) {
      if (std::find(exclude.begin(), exclude.end(), g) != exclude.end()) continue;
      fresh.push_back(g);
      if (std::find(used_goals_.begin(), used_goals_.end(), g) != used_goals_.end()) reuse.push_back(g);
    }
    GoalId out = !reuse.empty() && rng_.chance(cfg_.overlap) ? pick(rng_, reuse) : pick(rng_, fresh);
    if (std::find(used_goals_.begin(), used_goals_.end(), out) == used_goals_.end())
      used_goals_.push_back(out);
    return out;
  }

  OmittedActions omitted() {
    OmittedActions o;
    const int r = rng_.between(0, 19);
    o.severity = r < 12 ? Severity{Level::Caution, Urgency::Immediately}
                 : r < 17 ? Severity{Level::Consider, Urgency::Now}
                          : Severity{Level::Caution, Urgency::Unspecified};

    std::vector<GoalId> goals{goal({})};
    if (goal_pool_.size() > 1 && rng_.chance(0.2)) goals.push_back(goal(goals));

    const int steps = rng_.between(1, std::min<int>(4, static_cast<int>(pool_.size())));
    std::vector<ActionId> chosen;
    for (int s = 0; s < steps; ++s) {
      chosen.push_back(action(chosen));
      std::vector<GoalId> step_goals = goals;
      if (step_goals.size() < goal_pool_.size() && rng_.chance(0.1)) step_goals.push_back(goal(step_goals));
      o.steps.push_back({chosen.back(), std::move(step_goals)});
    }
    if (rng_.chance(0.1)) o.partial_goals.push_back(goals.front());
    return o;
  }

  CritiqueKind other() {
    switch (rng_.below(4)) {
      case 0: {
        SchedulePriority p;
        p.before = action({});
        p.do_first.push_back(action({p.before}));
        if (rng_.chance(0.5)) {
          std::vector<ActionId> ex = p.do_first;
          ex.push_back(p.before);
          p.do_first.push_back(action(ex));
        }
        return p;
      }
      case 1: {
        PreconditionReminder r;
        r.before = action({});
        r.precondition = action({r.before});
        return r;
      }
      case 2: {
        PostponeDependent d;
        d.depends_on = action({});
        d.postponed = action({d.depends_on});
        return d;
      }
      default: {
        PreferredAlternative a;
        a.dispreferred = action({});
        a.preferred = action({a.dispreferred});
        a.purpose = goal({});
        return a;
      }
    }
  }

  SeededRng& rng_;
  const GeneratorConfig& cfg_;
  CaseBundle b_;
  std::vector<ActionId> pool_, used_;
  std::vector<GoalId> goal_pool_, used_goals_;
};

std::string pad(const std::string& s, std::size_t w, bool left) {
  if (s.size() >= w) return s;
  return left ? s + std::string(w - s.size(), ' ') : std::string(w - s.size(), ' ') + s;
}

std::string rule_summary(const std::vector<std::string>& rules) {
  std::vector<std::pair<std::string, int>> counts;
  for (const auto& r : rules) {
    auto it = std::find_if(counts.begin(), counts.end(), [&](const auto& p) { return p.first == r; });
    if (it == counts.end())
      counts.emplace_back(r, 1);
    else
      ++it->second;
  }
  std::string out;
  for (const auto& [r, n] : counts) {
    if (!out.empty()) out += ", ";
    out += r;
    if (n > 1) out += " x" + std::to_string(n);
  }
  return out.empty() ? "-" : out;
}

}  // namespace

CaseBundle generate_bundle(SeededRng& rng, const GeneratorConfig& config) {
  return Builder(rng, config).build();
}

std::vector<CaseBundle> generate_corpus(const GeneratorConfig& config, std::size_t count) {
  std::vector<CaseBundle> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    SeededRng rng(config.seed * 0x9E3779B97F4A7C15ULL + i);
    out.push_back(generate_bundle(rng, config));
  }
  return out;
}

CorpusReport run_corpus(const std::vector<std::pair<std::string, CaseBundle>>& cases,
                        const MergeWeights& weights) {
  CorpusReport out;
  for (const auto& [name, bundle] : cases) {
    CorpusRow row{name, false, {}, {}};
    try {
      row.report = run_case(bundle, weights).report;
      row.ok = true;
      out.aggregate += row.report;
    } catch (const std::exception& e) {
      row.error = e.what();
      ++out.failures;
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

CorpusReport run_corpus(const std::filesystem::path& directory, const MergeWeights& weights) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(directory))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::vector<std::pair<std::string, CaseBundle>> cases;
  CorpusReport unreadable;
  for (const auto& f : files) {
    try {
      cases.emplace_back(f.stem().string(), load_bundle(f));
    } catch (const std::exception& e) {
      unreadable.rows.push_back({f.stem().string(), false, e.what(), {}});
      ++unreadable.failures;
    }
  }
  CorpusReport out = run_corpus(cases, weights);
  out.rows.insert(out.rows.end(), unreadable.rows.begin(), unreadable.rows.end());
  out.failures += unreadable.failures;
  std::stable_sort(out.rows.begin(), out.rows.end(),
                   [](const CorpusRow& a, const CorpusRow& b) { return a.name < b.name; });
  return out;
}

std::string format_table(const CorpusReport& report) {
  const std::vector<std::string> head{"case", "msgs", "", "NPs", "", "shifts", "", "rules"};
  std::vector<std::vector<std::string>> rows;
  auto row_of = [](const std::string& name, const MetricsReport& r) {
    return std::vector<std::string>{name,
                                    std::to_string(r.message_count_before),
                                    std::to_string(r.message_count_after),
                                    std::to_string(r.np_count_before),
                                    std::to_string(r.np_count_after),
                                    std::to_string(r.focus_shifts_before),
                                    std::to_string(r.focus_shifts_after),
                                    rule_summary(r.rules_fired)};
  };
  for (const auto& r : report.rows) {
    if (r.ok)
      rows.push_back(row_of(r.name, r.report));
    else
      rows.push_back({r.name, "-", "-", "-", "-", "-", "-", "FAILED: " + r.error});
  }
  auto total = row_of("total", report.aggregate);
  total.back() = std::to_string(report.aggregate.rules_fired.size()) + " rule firings";
  rows.push_back(total);

  const std::vector<std::string> sub{"", "before", "after", "before", "after", "before", "after", ""};
  std::vector<std::size_t> width(head.size(), 0);
  for (std::size_t c = 0; c < head.size(); ++c) {
    width[c] = std::max(head[c].size(), sub[c].size());
    for (const auto& r : rows) width[c] = std::max(width[c], r[c].size());
  }
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) s += "  ";
      s += pad(cells[c], width[c], c == 0 || c + 1 == cells.size());
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    os << s << '\n';
  };
  line(head);
  line(sub);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i + 1 == rows.size()) {
      std::size_t w = 0;
      for (auto x : width) w += x + 2;
      os << std::string(w - 2, '-') << '\n';
    }
    line(rows[i]);
  }
  return os.str();
}

std::string format_report(const MetricsReport& r) {
  std::ostringstream os;
  os << std::left << std::setw(16) << "" << std::right << std::setw(8) << "before" << std::setw(8)
     << "after" << '\n';
  auto row = [&](const char* name, int before, int after) {
    os << std::left << std::setw(16) << name << std::right << std::setw(8) << before << std::setw(8)
       << after << '\n';
  };
  row("messages", r.message_count_before, r.message_count_after);
  row("noun phrases", r.np_count_before, r.np_count_after);
  row("focus shifts", r.focus_shifts_before, r.focus_shifts_after);
  os << "rules fired: " << rule_summary(r.rules_fired) << '\n';
  return os.str();
}

}  // namespace msgplan
