#pragma once

// Combine-Similar-Intentions: merge omitted-action critiques that overlap in
// actions or goals into one Sequence of at most three segments, chosen by a
// weighted four-term metric.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "msgplan/critique_model.hpp"
#include "msgplan/text_plan.hpp"

namespace msgplan {

inline constexpr std::size_t kMaxSegments = 3;

struct Segment {
  std::vector<Cell> cells;
  std::vector<Motivate> goal_statuses;  // one entry per goal, display order

  bool operator==(const Segment&) const = default;

  std::optional<GoalStatus> status_of(const GoalId& g) const;
};

struct MergeCandidate {
  std::vector<Segment> segments;
  std::vector<CritiqueId> merged_ids;  // ascending order_index
  Severity severity;

  bool operator==(const MergeCandidate&) const = default;

  std::vector<ActionId> actions_in_order() const;
};

struct MergeWeights {
  double w1 = 2.0;  // goal spread over segments (penalty)
  double w2 = 2.0;  // action repetitions saved (reward)
  double w3 = 1.0;  // goal repetitions (penalty)
  double w4 = 2.0;  // critiques merged (reward)
};

struct ScoreBreakdown {
  int t1_goal_spread = 0;
  int t2_action_repetition_saved = 0;
  int t3_goal_repetitions = 0;
  int t4_critiques_merged = 0;
  double total = 0.0;

  bool operator==(const ScoreBreakdown&) const = default;
};

// Connected components of the action/goal overlap graph among omitted-action
// critiques; every other critique is its own group.  Groups and members are
// ordered by order_index.
std::vector<std::vector<Critique>> group_mergeable(std::span<const Critique> critiques);

struct CellOrder {
  std::vector<Cell> cells;
  bool cycle = false;  // precedence conflict; fell back to order_index order
};

CellOrder order_cells(std::span<const Critique> group);

// Every split of the ordered cells into 1..3 consecutive segments, with goal
// statuses assigned.
std::vector<MergeCandidate> enumerate_candidates(const std::vector<Cell>& cells,
                                                 std::span<const Critique> group);

// No goal is served by two cells of the same segment.
bool is_coherent(const MergeCandidate& c);

// Structural NP count: action mentions plus realized goal mentions.
int noun_phrase_count(const MergeCandidate& c);
int noun_phrase_count(std::span<const Critique> originals);

// Coherent and no longer than the originals it replaces.
bool is_admissible(const MergeCandidate& c, std::span<const Critique> originals);

ScoreBreakdown score(const MergeCandidate& candidate, std::span<const Critique> originals,
                     const MergeWeights& weights);

struct ScoredCandidate {
  MergeCandidate candidate;
  ScoreBreakdown breakdown;
};

// Best admissible candidate over the whole group and, for groups of three or
// more, the group with one critique left out.  Nothing when no admissible
// merge of two or more critiques exists.
std::optional<ScoredCandidate> best_merge(std::span<const Critique> group,
                                          const MergeWeights& weights);

struct MergeResult {
  std::vector<ScoredCandidate> chosen;
  std::vector<Critique> leftovers;  // ascending order_index
  std::vector<std::string> trace;
};

MergeResult combine_similar_intentions(std::span<const Critique> critiques,
                                       const MergeWeights& weights);

// Sequence of Motivation segments; only the first segment carries the
// severity label.
TextPlan candidate_plan(const MergeCandidate& c, bool severity_labels);

}  // namespace msgplan
