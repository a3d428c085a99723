#pragma once

// Shared helpers for the unit, property and acceptance tests.

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "msgplan/case_io.hpp"
#include "msgplan/critique_model.hpp"

#ifndef MSGPLAN_FIXTURE_DIR
#error "MSGPLAN_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace msgplan {

// Readable ids in assertion failures.
template <typename Tag>
void PrintTo(const StrongId<Tag>& id, std::ostream* os) {
  *os << id.value;
}

}  // namespace msgplan

namespace msgplan::testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(MSGPLAN_FIXTURE_DIR) / name;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Messages of an expected-output file; blank lines separate messages and
// whitespace inside a message is normalized to single spaces.
inline std::vector<std::string> expected_messages(const std::filesystem::path& p) {
  std::vector<std::string> out;
  std::istringstream in(read_file(p));
  std::string line, current;
  auto flush = [&] {
    if (!current.empty()) out.push_back(current);
    current.clear();
  };
  while (std::getline(in, line)) {
    std::istringstream words(line);
    std::string w;
    bool any = false;
    while (words >> w) {
      any = true;
      if (!current.empty()) current += ' ';
      current += w;
    }
    if (!any) flush();
  }
  flush();
  return out;
}

inline std::string normalize(const std::string& s) {
  std::istringstream words(s);
  std::string w, out;
  while (words >> w) out += (out.empty() ? "" : " ") + w;
  return out;
}

inline ActionId A(const std::string& s) { return ActionId(s); }
inline GoalId G(const std::string& s) { return GoalId(s); }
inline CritiqueId C(const std::string& s) { return CritiqueId(s); }

inline Critique omitted(const std::string& id, std::uint32_t order,
                        std::vector<std::pair<std::string, std::vector<std::string>>> steps,
                        Severity sev = {Level::Caution, Urgency::Immediately},
                        std::vector<std::string> partial = {}) {
  OmittedActions o;
  o.severity = sev;
  for (auto& [a, gs] : steps) {
    Step s{ActionId(a), {}};
    for (auto& g : gs) s.goals.emplace_back(g);
    o.steps.push_back(std::move(s));
  }
  for (auto& g : partial) o.partial_goals.emplace_back(g);
  return Critique{CritiqueId(id), std::move(o), order};
}

// A lexicon where action "x" reads "do x"/"doing x" and goal "g" reads "g".
inline Lexicon plain_lexicon(const std::vector<std::string>& actions,
                             const std::vector<std::string>& goals) {
  Lexicon lex;
  for (const auto& a : actions) lex.entries[a] = {"do " + a, "doing " + a, false};
  for (const auto& g : goals) lex.goals[GoalId(g)] = {GoalId(g), g, g};
  return lex;
}

}  // namespace msgplan::testing
