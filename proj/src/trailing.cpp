#include "msgplan/trailing.hpp"

#include <algorithm>
#include <optional>

namespace msgplan {

namespace {

// One shared goal signature across every step, or nothing.
std::optional<std::vector<GoalId>> single_purpose(const OmittedActions& o) {
  if (o.steps.empty()) return std::nullopt;
  for (const auto& s : o.steps)
    if (!same_signature(s.goals, o.steps.front().goals)) return std::nullopt;
  return o.steps.front().goals;
}

std::ptrdiff_t position(const std::vector<ActionId>& order, const ActionId& a) {
  auto it = std::find(order.begin(), order.end(), a);
  return it == order.end() ? -1 : it - order.begin();
}

struct Pending {
  TrailingComment comment;
  std::ptrdiff_t intro = 0;
  std::uint32_t order_index = 0;
};

}  // namespace

TrailingSelection select_trailing(std::span<const MergeCandidate> hosts,
                                  std::span<const Critique> leftovers) {
  TrailingSelection out;
  out.per_host.resize(hosts.size());
  std::vector<std::vector<ActionId>> intro;
  for (const auto& h : hosts) intro.push_back(h.actions_in_order());

  std::vector<std::vector<Pending>> pending(hosts.size());
  for (const auto& c : leftovers) {
    const auto* o = c.as<OmittedActions>();
    const auto purpose = o ? single_purpose(*o) : std::nullopt;
    std::optional<std::size_t> host;
    if (purpose) {
      for (std::size_t h = hosts.size(); h-- > 0;) {
        const bool shares = std::any_of(o->steps.begin(), o->steps.end(), [&](const Step& s) {
          return position(intro[h], s.action) >= 0;
        });
        if (shares) {
          host = h;
          break;
        }
      }
    }
    if (!host) {
      out.still_leftover.push_back(c);
      continue;
    }

    Pending p;
    p.order_index = c.order_index;
    p.intro = -1;
    for (const auto& s : o->steps) {
      const auto pos = position(intro[*host], s.action);
      if (pos > p.intro) {
        p.intro = pos;
        p.comment.focused_action = s.action;
      }
    }
    for (const auto& s : o->steps)
      if (s.action != p.comment.focused_action) p.comment.companions.push_back(s.action);
    p.comment.source_id = c.id;
    p.comment.purpose = *purpose;
    pending[*host].push_back(std::move(p));
  }

  for (std::size_t h = 0; h < hosts.size(); ++h) {
    auto& list = pending[h];
    std::stable_sort(list.begin(), list.end(), [](const Pending& a, const Pending& b) {
      if (a.intro != b.intro) return a.intro > b.intro;
      return a.order_index < b.order_index;
    });
    int rank = 1;
    for (auto& p : list) {
      p.comment.rank = rank++;
      out.per_host[h].push_back(std::move(p.comment));
    }
  }
  return out;
}

RealizedSentence realize_trailing(const TrailingComment& comment, PhraseBuilder& phrases) {
  std::string text = comment.rank == 1 ? "Moreover, " : "In addition, ";
  text += phrases.action(comment.focused_action, VerbForm::Gerund);
  text += " is also indicated";
  if (!comment.companions.empty()) {
    std::vector<std::string> companions;
    for (const auto& a : comment.companions)
      companions.push_back(phrases.action(a, VerbForm::Gerund));
    text += ", along with " + join_list(companions) + ",";
  }
  std::vector<std::string> goals;
  for (const auto& g : comment.purpose) goals.push_back(phrases.goal_infinitive(g));
  text += " to " + join_list(goals) + ".";
  return phrases.finish(std::move(text));
}

std::string realize_trailing(const TrailingComment& comment, const Lexicon& lexicon,
                             DiscourseState& state) {
  PhraseBuilder phrases(lexicon, state);
  auto sentence = realize_trailing(comment, phrases);
  state = std::move(phrases).take_state();
  return sentence.text;
}

}  // namespace msgplan
