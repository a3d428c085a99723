#pragma once

// One planning turn end to end: validate, revise interacting pairs, combine
// similar intentions, pick trailing comments, attach schedules, realize.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "msgplan/critique_model.hpp"
#include "msgplan/merge.hpp"
#include "msgplan/surface.hpp"
#include "msgplan/text_plan.hpp"
#include "msgplan/trailing.hpp"

namespace msgplan {

inline const std::string kRuleCombine = "Combine-Similar-Intentions";
inline const std::string kRuleTrailing = "Trailing-Comment";
inline const std::string kRuleAttach = "Attach-Schedule";

struct BundleError : std::runtime_error {
  explicit BundleError(std::vector<Violation> v);
  std::vector<Violation> violations;
};

struct PlannedMessage {
  TextPlan plan;
  std::vector<TrailingComment> trailing;
  std::vector<CritiqueId> sources;
  std::vector<ActionId> conflicted;  // disputed before realization
  std::uint32_t order = 0;           // lowest source order_index
};

struct OutputMessage {
  PlannedMessage planned;
  RealizedMessage realized;
  int noun_phrases = 0;
  int focus_shifts = 0;

  std::string text() const { return realized.text(); }
};

struct MetricsReport {
  int message_count_before = 0;
  int message_count_after = 0;
  int np_count_before = 0;
  int np_count_after = 0;
  int focus_shifts_before = 0;
  int focus_shifts_after = 0;
  std::vector<std::string> rules_fired;

  bool operator==(const MetricsReport&) const = default;
  MetricsReport& operator+=(const MetricsReport& o);
};

struct PlanResult {
  std::vector<PlannedMessage> messages;  // output order
  DiscourseState start;                  // prior state with CBMR applied
  std::vector<std::string> rules_fired;
  std::vector<ScoredCandidate> merges;
  std::vector<std::string> trace;
};

struct CaseResult {
  std::vector<OutputMessage> messages;
  std::vector<OutputMessage> baseline;
  DiscourseState state;
  MetricsReport report;
  std::vector<ScoredCandidate> merges;
  std::vector<std::string> trace;

  std::vector<std::string> texts() const;
};

// Throws BundleError listing every schema violation.
void require_valid(const CaseBundle& bundle);

PlanResult plan_case(const CaseBundle& bundle, const MergeWeights& weights = {});

// Realizes in order, threading the discourse state; `state` ends up after the
// last message.
std::vector<OutputMessage> realize_messages(const std::vector<PlannedMessage>& messages,
                                            const Lexicon& lexicon, DiscourseState& state);

// One message per critique, in order_index order.
std::vector<PlannedMessage> baseline_messages(const CaseBundle& bundle);
// Each critique realized on its own against the post-CBMR state, as the
// critiquer would have shown it; focus shifts still thread the stack.
std::vector<OutputMessage> realize_baseline(const CaseBundle& bundle);

CaseResult run_case(const CaseBundle& bundle, const MergeWeights& weights = {});

// (action, goal) motivation pairs stated by the input critiques / the output.
std::vector<std::pair<ActionId, GoalId>> input_pairs(const CaseBundle& bundle);
std::vector<std::pair<ActionId, GoalId>> output_pairs(const std::vector<PlannedMessage>& messages);

}  // namespace msgplan
