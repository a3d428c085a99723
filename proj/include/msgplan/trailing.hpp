#pragma once

// Trailing comments: leftover critiques that mention an action already
// introduced by a merged message are appended to it rather than re-planned.

#include <span>
#include <string>
#include <vector>

#include "msgplan/critique_model.hpp"
#include "msgplan/merge.hpp"
#include "msgplan/surface.hpp"

namespace msgplan {

struct TrailingComment {
  CritiqueId source_id;
  ActionId focused_action;  // given information; becomes the subject
  std::vector<ActionId> companions;  // "along with ..."
  std::vector<GoalId> purpose;
  int rank = 1;  // 1 -> "Moreover,", later -> "In addition,"

  bool operator==(const TrailingComment&) const = default;
};

struct TrailingSelection {
  std::vector<std::vector<TrailingComment>> per_host;  // parallel to hosts
  std::vector<Critique> still_leftover;
};

// Hosts are merged messages in output order.  A leftover attaches to the host
// whose shared action was introduced latest; within a host, comments are
// ranked by how recently their focused action was introduced, latest first.
TrailingSelection select_trailing(std::span<const MergeCandidate> hosts,
                                  std::span<const Critique> leftovers);

RealizedSentence realize_trailing(const TrailingComment& comment, PhraseBuilder& phrases);
std::string realize_trailing(const TrailingComment& comment, const Lexicon& lexicon,
                             DiscourseState& state);

}  // namespace msgplan
