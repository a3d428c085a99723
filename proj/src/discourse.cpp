#include "msgplan/discourse.hpp"

#include <algorithm>

namespace msgplan {

namespace {

void insert_sorted(std::vector<ActionId>& v, const ActionId& a) {
  auto it = std::lower_bound(v.begin(), v.end(), a);
  if (it == v.end() || *it != a) v.insert(it, a);
}

void erase_sorted(std::vector<ActionId>& v, const ActionId& a) {
  auto it = std::lower_bound(v.begin(), v.end(), a);
  if (it != v.end() && *it == a) v.erase(it);
}

}  // namespace

DiscourseState ingest_cbmr(DiscourseState state, std::span<const ActionId> entries) {
  for (const auto& a : entries) {
    insert_sorted(state.shared_knowledge, a);
    erase_sorted(state.conflicted, a);
  }
  return state;
}

DiscourseState mark_conflicted(DiscourseState state, std::span<const ActionId> actions) {
  for (const auto& a : actions) insert_sorted(state.conflicted, a);
  return state;
}

DiscourseState note_mention(DiscourseState state, const ActionId& action) {
  auto& stack = state.focus_stack;
  stack.erase(std::remove(stack.begin(), stack.end(), action), stack.end());
  stack.push_back(action);
  if (!state.is_conflicted(action)) insert_sorted(state.shared_knowledge, action);
  return state;
}

DiscourseState update_after_message(DiscourseState state, std::span<const ActionId> mentions,
                                    std::span<const ActionId> conflicted) {
  state = mark_conflicted(std::move(state), conflicted);
  for (const auto& a : mentions) state = note_mention(std::move(state), a);
  return state;
}

Article choose_article(const DiscourseState& state, const ActionId& action,
                       const Lexicon& lexicon) {
  if (!lexicon.entry(action).has_article) return Article::None;
  if (state.is_conflicted(action) || !state.is_shared(action)) return Article::Indefinite;
  return Article::Definite;
}

ClauseOrder clause_order(const Schedule& act, std::span<const ActionId> preceding_segment) {
  if (act.do_first.empty() || preceding_segment.empty()) return ClauseOrder::SubordinateFirst;
  for (const auto& a : act.do_first)
    if (std::find(preceding_segment.begin(), preceding_segment.end(), a) == preceding_segment.end())
      return ClauseOrder::SubordinateFirst;
  return ClauseOrder::MainFirst;
}

}  // namespace msgplan
