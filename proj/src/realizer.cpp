#include "msgplan/realizer.hpp"

#include <algorithm>
#include <stdexcept>

namespace msgplan {

namespace {

const char* kLatterFormer = "the outcome of the latter may affect the need to do the former";

std::string because(const Schedule& s) {
  return s.do_first.size() == 1 ? " because it has a higher priority"
                                : " because they have a higher priority";
}

std::vector<std::string> render_all(const std::vector<ActionId>& actions, VerbForm form,
                                    PhraseBuilder& pb) {
  std::vector<std::string> out;
  for (const auto& a : actions) out.push_back(pb.action(a, form));
  return out;
}

// "as part of X" / "to Y" / "to complete Z", or the anaphoric form.
std::string purpose_clause(const Cell& cell, const std::vector<Motivate>& motives,
                           PhraseBuilder& pb) {
  if (cell.signature.empty()) return {};
  if (cell_is_anaphoric(cell, motives)) {
    pb.goal_anaphor();
    return cell.signature.size() == 2 ? "to address both of these goals"
                                      : "to address these goals";
  }
  enum class Frame { To, PartOf, Complete };
  auto frame_of = [](GoalStatus s) {
    switch (s) {
      case GoalStatus::Sole: return Frame::To;
      case GoalStatus::Complete: return Frame::Complete;
      default: return Frame::PartOf;
    }
  };
  std::vector<std::pair<Frame, std::vector<GoalId>>> groups;
  for (const auto& g : cell.signature) {
    const Frame f = frame_of(status_for(motives, g));
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& p) { return p.first == f; });
    if (it == groups.end())
      groups.push_back({f, {g}});
    else
      it->second.push_back(g);
  }
  std::vector<std::string> parts;
  for (const auto& [frame, goals] : groups) {
    std::vector<std::string> names;
    for (const auto& g : goals)
      names.push_back(frame == Frame::To ? pb.goal_infinitive(g) : pb.goal_gerund(g));
    switch (frame) {
      case Frame::To: parts.push_back("to " + join_list(names)); break;
      case Frame::PartOf: parts.push_back("as part of " + join_list(names)); break;
      case Frame::Complete: parts.push_back("to complete " + join_list(names)); break;
    }
  }
  if (parts.size() == 2) return parts[0] + ", and " + parts[1];
  return join_list(parts);
}

RealizedSentence realize_segment(const Recommend& rec, const std::vector<Motivate>& motives,
                                 PhraseBuilder& pb, const std::string& cue) {
  const bool consider = rec.show_level && rec.severity.level == Level::Consider;
  const VerbForm form = consider ? VerbForm::Gerund : VerbForm::Imperative;

  std::vector<ActionId> all;
  for (const auto& c : rec.cells) all.insert(all.end(), c.actions.begin(), c.actions.end());
  const std::size_t skip = pb.common_prefix(all, form).size();

  std::vector<std::string> cell_texts;
  bool internal_list = false;
  bool first = true;
  for (std::size_t i = 0; i < rec.cells.size(); ++i) {
    const Cell& cell = rec.cells[i];
    std::vector<std::string> acts;
    for (const auto& a : cell.actions) {
      acts.push_back(first ? pb.action(a, form) : pb.action_without_prefix(a, form, skip));
      first = false;
    }
    std::string text = join_list(acts);
    if (i == 0 && rec.show_urgency) {
      if (rec.severity.urgency == Urgency::Immediately) text += " immediately";
      if (rec.severity.urgency == Urgency::Now) text += " now";
    }
    const std::string purpose = purpose_clause(cell, motives, pb);
    if (!purpose.empty()) text += " " + purpose;
    internal_list = internal_list || cell.actions.size() > 1 ||
                    (!cell_is_anaphoric(cell, motives) && cell.signature.size() > 1);
    cell_texts.push_back(std::move(text));
  }

  std::string body = cell_texts.size() == 2 && internal_list
                         ? cell_texts[0] + ", and " + cell_texts[1]
                         : join_list(cell_texts);
  if (consider)
    body = "Consider " + body;
  else if (rec.show_level && rec.severity.level == Level::Caution)
    body = "Caution: " + body;
  else
    body = capitalize(body);
  if (!cue.empty()) body = cue + " " + lowercase_first(body);
  return pb.finish(body + ".");
}

// The main clause of a schedule that follows "if you ..., then".
std::string conditional_schedule(const Schedule& s, PhraseBuilder& pb) {
  switch (s.reason) {
    case ScheduleReason::Reminder:
      return "remember to first " + join_list(render_all(s.do_first, VerbForm::Imperative, pb));
    case ScheduleReason::Priority:
      return "first " + join_list(render_all(s.do_first, VerbForm::Imperative, pb)) + because(s);
    case ScheduleReason::Dependency:
      return "wait until after " + join_list(render_all(s.do_first, VerbForm::Gerund, pb)) +
             " since " + kLatterFormer;
  }
  return {};
}

std::vector<ActionId> segment_actions(const PlanNode& node) {
  std::vector<ActionId> out;
  const PlanNode* last = &node;
  if (auto* r = node.relation(); r && r->relation == RelationKind::Sequence)
    last = &r->children.back();
  if (auto seg = unpack_segment(*last); seg.recommend)
    for (const auto& c : seg.recommend->cells) out.insert(out.end(), c.actions.begin(), c.actions.end());
  return out;
}

class Emitter {
 public:
  explicit Emitter(PhraseBuilder& pb) : pb_(pb) {}

  std::vector<RealizedSentence> sentences;

  void emit(const PlanNode& node) {
    if (auto seg = unpack_segment(node); seg.recommend) {
      sentences.push_back(realize_segment(*seg.recommend, seg.motives, pb_, ""));
      return;
    }
    if (auto* r = node.relation()) {
      emit_relation(*r);
      return;
    }
    emit_act(*node.act());
  }

 private:
  void emit_relation(const RelationNode& r) {
    switch (r.relation) {
      case RelationKind::Sequence: {
        std::vector<MotivatedSegment> segs;
        for (const auto& c : r.children) segs.push_back(unpack_segment(c));
        const bool all_segments = std::all_of(segs.begin(), segs.end(),
                                              [](const auto& s) { return s.recommend != nullptr; });
        if (!all_segments) {
          for (const auto& c : r.children) emit(c);
          return;
        }
        for (std::size_t i = 0; i < segs.size(); ++i) {
          const std::string cue = i == 0 ? "" : i + 1 == segs.size() ? "Then" : "Next";
          sentences.push_back(realize_segment(*segs[i].recommend, segs[i].motives, pb_, cue));
        }
        return;
      }
      case RelationKind::Concession: {
        emit(r.children[0]);
        const std::size_t first = sentences.size();
        emit(r.children[1]);
        if (first < sentences.size())
          sentences[first].text = "However, " + lowercase_first(sentences[first].text);
        return;
      }
      case RelationKind::Condition: {
        const auto* premise = r.children[1].act_as<Assume>();
        if (!premise) throw std::invalid_argument("CONDITION satellite must be an assumption");
        std::string text = "If you " + pb_.action(premise->action, VerbForm::Imperative) + ", then ";
        if (auto* s = r.children[0].act_as<Schedule>()) {
          text += conditional_schedule(*s, pb_) + ".";
          sentences.push_back(pb_.finish(std::move(text)));
          return;
        }
        // The premise mention is still pending and lands in the first sentence.
        const std::size_t first = sentences.size();
        emit(r.children[0]);
        if (first < sentences.size())
          sentences[first].text = text + lowercase_first(sentences[first].text);
        return;
      }
      case RelationKind::Elaboration: {
        emit(r.children[0]);
        if (auto* s = r.children[1].act_as<Schedule>()) {
          const auto preceding = segment_actions(r.children[0]);
          sentences.push_back(realize_schedule(*s, pb_, preceding));
          return;
        }
        emit(r.children[1]);
        return;
      }
      case RelationKind::Motivation:
        throw std::invalid_argument("MOTIVATION must motivate a recommendation");
    }
  }

  void emit_act(const CommunicativeAct& act) {
    if (auto* s = std::get_if<Schedule>(&act)) {
      sentences.push_back(realize_schedule(*s, pb_));
    } else if (auto* p = std::get_if<Prefer>(&act)) {
      std::string text = capitalize(pb_.action(p->preferred, VerbForm::Gerund));
      text += " is preferred over " + pb_.action(p->dispreferred, VerbForm::Gerund);
      text += " for " + pb_.goal_gerund(p->purpose) + ".";
      sentences.push_back(pb_.finish(std::move(text)));
    } else if (auto* d = std::get_if<Decide>(&act)) {
      std::string text = "Use the results of " + pb_.noun_phrase(d->basis);
      text += " to decide whether or not to " + pb_.action(d->decided, VerbForm::Imperative) + ".";
      sentences.push_back(pb_.finish(std::move(text)));
    } else if (auto* a = std::get_if<Assume>(&act)) {
      sentences.push_back(
          pb_.finish("Suppose you " + pb_.action(a->action, VerbForm::Imperative) + "."));
    } else {
      throw std::invalid_argument("stray MOTIVATE outside a recommendation");
    }
  }

  PhraseBuilder& pb_;
};

int count_node(const PlanNode& node) {
  if (auto seg = unpack_segment(node); seg.recommend) {
    int n = 0;
    for (const auto& c : seg.recommend->cells)
      n += static_cast<int>(c.actions.size()) + cell_goal_mentions(c, seg.motives);
    return n;
  }
  if (auto* r = node.relation()) {
    // A conditional schedule leaves its scheduled action to the premise.
    if (auto* s = r->children[0].act_as<Schedule>(); s && r->relation == RelationKind::Condition)
      return static_cast<int>(s->do_first.size()) + count_node(r->children[1]);
    int n = 0;
    for (const auto& c : r->children) n += count_node(c);
    return n;
  }
  const auto& act = *node.act();
  if (auto* s = std::get_if<Schedule>(&act)) return static_cast<int>(s->do_first.size()) + 1;
  if (std::holds_alternative<Prefer>(act)) return 3;
  if (std::holds_alternative<Decide>(act)) return 2;
  if (std::holds_alternative<Assume>(act)) return 1;
  return 0;
}

}  // namespace

RealizedSentence realize_schedule(const Schedule& s, PhraseBuilder& pb,
                                  std::span<const ActionId> preceding) {
  std::string text;
  switch (s.reason) {
    case ScheduleReason::Priority:
      if (clause_order(s, preceding) == ClauseOrder::MainFirst) {
        text = capitalize(join_list(render_all(s.do_first, VerbForm::Imperative, pb)));
        text += " before " + pb.action(s.before, VerbForm::Gerund);
      } else {
        text = "Before " + pb.action(s.before, VerbForm::Gerund) + ", ";
        text += join_list(render_all(s.do_first, VerbForm::Imperative, pb));
      }
      text += because(s) + ".";
      break;
    case ScheduleReason::Reminder:
      text = "Please remember to " + join_list(render_all(s.do_first, VerbForm::Imperative, pb));
      text += " before you " + pb.action(s.before, VerbForm::Imperative) + ".";
      break;
    case ScheduleReason::Dependency: {
      // A disputed postponement folds its justification into one sentence.
      const bool disputed = pb.state().is_conflicted(s.before);
      text = "Do not " + pb.action(s.before, VerbForm::Imperative) + " until after ";
      text += join_list(render_all(s.do_first, VerbForm::Gerund, pb));
      text += disputed ? std::string(" since ") + kLatterFormer + "."
                       : std::string(". ") + capitalize(kLatterFormer) + ".";
      break;
    }
  }
  return pb.finish(std::move(text));
}

Realization realize(const TextPlan& plan, const DiscourseState& state, const Lexicon& lexicon,
                    std::span<const TrailingComment> trailing,
                    std::span<const ActionId> conflicted) {
  PhraseBuilder pb(lexicon, mark_conflicted(state, conflicted));
  Emitter emitter(pb);
  emitter.emit(plan.root);
  for (const auto& t : trailing) emitter.sentences.push_back(realize_trailing(t, pb));
  return {RealizedMessage{std::move(emitter.sentences)}, std::move(pb).take_state()};
}

int count_noun_phrases(const TextPlan& plan, std::span<const TrailingComment> trailing) {
  int n = count_node(plan.root);
  for (const auto& t : trailing)
    n += 1 + static_cast<int>(t.companions.size() + t.purpose.size());
  return n;
}

int count_focus_shifts(const RealizedMessage& message, const DiscourseState& before) {
  DiscourseState state = before;
  int shifts = 0;
  for (const auto& s : message.sentences) {
    if (s.mentions.empty()) continue;
    if (auto top = state.top(); top && *top != s.mentions.front()) ++shifts;
    for (const auto& a : s.mentions) state = note_mention(std::move(state), a);
  }
  return shifts;
}

}  // namespace msgplan
