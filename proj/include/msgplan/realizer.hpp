#pragma once

// Surface realization of text plans.  Reference choices (definite vs.
// indefinite) follow the discourse state as it evolves through the message.

#include <span>

#include "msgplan/critique_model.hpp"
#include "msgplan/discourse.hpp"
#include "msgplan/surface.hpp"
#include "msgplan/text_plan.hpp"
#include "msgplan/trailing.hpp"

namespace msgplan {

struct Realization {
  RealizedMessage message;
  DiscourseState state;  // after the message
};

// `conflicted` enters the disputed set before anything is rendered.
Realization realize(const TextPlan& plan, const DiscourseState& state, const Lexicon& lexicon,
                     std::span<const TrailingComment> trailing = {},
                     std::span<const ActionId> conflicted = {});

// A schedule on its own, or following a segment that mentions `preceding`.
RealizedSentence realize_schedule(const Schedule& s, PhraseBuilder& phrases,
                                  std::span<const ActionId> preceding = {});

// Noun phrases the realized message will contain, counted from the plan.
int count_noun_phrases(const TextPlan& plan, std::span<const TrailingComment> trailing = {});

// Sentences whose first mention is not the current focus (top of a non-empty
// stack).  `before` is the state the message was realized against, after any
// conflicted marking.
int count_focus_shifts(const RealizedMessage& message, const DiscourseState& before);

}  // namespace msgplan
