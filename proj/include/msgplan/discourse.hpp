#pragma once

// Discourse state threaded across messages and planning turns: the focus
// stack, what counts as shared knowledge, and which procedures are disputed.

#include <span>

#include "msgplan/critique_model.hpp"
#include "msgplan/text_plan.hpp"

namespace msgplan {

enum class Article { Definite, Indefinite, None };
enum class ClauseOrder { SubordinateFirst, MainFirst };

// CBMR entries become shared knowledge; an entry also settles any earlier
// dispute about that action.
DiscourseState ingest_cbmr(DiscourseState state, std::span<const ActionId> entries);

DiscourseState mark_conflicted(DiscourseState state, std::span<const ActionId> actions);

// Moves the action to the top of the focus stack and, unless disputed, makes
// it shared knowledge.
DiscourseState note_mention(DiscourseState state, const ActionId& action);

// State after a realized message: `conflicted` enters the disputed set first,
// then every mention is applied in order.
DiscourseState update_after_message(DiscourseState state, std::span<const ActionId> mentions,
                                    std::span<const ActionId> conflicted = {});

Article choose_article(const DiscourseState& state, const ActionId& action,
                       const Lexicon& lexicon);

// MainFirst when every do_first action was mentioned in the segment the
// schedule follows; a schedule that stands alone leads with its subordinate
// clause.
ClauseOrder clause_order(const Schedule& act, std::span<const ActionId> preceding_segment);

}  // namespace msgplan
