#include "msgplan/pipeline.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "msgplan/discourse.hpp"
#include "msgplan/realizer.hpp"
#include "msgplan/revision.hpp"

namespace msgplan {

namespace {

std::string describe(const std::vector<Violation>& v) {
  std::ostringstream os;
  os << "invalid case bundle (" << v.size() << " problem" << (v.size() == 1 ? "" : "s") << ")";
  for (const auto& x : v) os << "\n  " << x.path << ": " << x.message;
  return os.str();
}

void strip_labels(PlanNode& node) {
  if (auto* r = std::get_if<RelationNode>(&node.node)) {
    for (auto& c : r->children) strip_labels(c);
    return;
  }
  if (auto* rec = std::get_if<Recommend>(&std::get<CommunicativeAct>(node.node)))
    rec->show_level = false;
}

std::vector<ActionId> last_segment_actions(const PlanNode& root) {
  const PlanNode* last = &root;
  if (auto* r = root.relation(); r && r->relation == RelationKind::Sequence)
    last = &r->children.back();
  std::vector<ActionId> out;
  if (auto seg = unpack_segment(*last); seg.recommend)
    for (const auto& c : seg.recommend->cells) out.insert(out.end(), c.actions.begin(), c.actions.end());
  return out;
}

// A postponement of something already ordered disputes that order.
std::vector<ActionId> disputed(const Critique& c, const DiscourseState& state) {
  if (auto* d = c.as<PostponeDependent>(); d && state.is_shared(d->postponed)) return {d->postponed};
  return {};
}

std::uint32_t order_of(const std::vector<CritiqueId>& ids, const std::vector<Critique>& all) {
  std::uint32_t m = UINT32_MAX;
  for (const auto& c : all)
    if (std::find(ids.begin(), ids.end(), c.id) != ids.end()) m = std::min(m, c.order_index);
  return m;
}

DiscourseState start_state(const CaseBundle& bundle) {
  return ingest_cbmr(bundle.prior_state.value_or(DiscourseState{}), bundle.cbmr);
}

}  // namespace

BundleError::BundleError(std::vector<Violation> v)
    : std::runtime_error(describe(v)), violations(std::move(v)) {}

MetricsReport& MetricsReport::operator+=(const MetricsReport& o) {
  message_count_before += o.message_count_before;
  message_count_after += o.message_count_after;
  np_count_before += o.np_count_before;
  np_count_after += o.np_count_after;
  focus_shifts_before += o.focus_shifts_before;
  focus_shifts_after += o.focus_shifts_after;
  rules_fired.insert(rules_fired.end(), o.rules_fired.begin(), o.rules_fired.end());
  return *this;
}

std::vector<std::string> CaseResult::texts() const {
  std::vector<std::string> out;
  for (const auto& m : messages) out.push_back(m.text());
  return out;
}

void require_valid(const CaseBundle& bundle) {
  auto v = validate_bundle(bundle);
  if (!v.empty()) throw BundleError(std::move(v));
}

PlanResult plan_case(const CaseBundle& bundle, const MergeWeights& weights) {
  require_valid(bundle);
  PlanResult out;
  out.start = start_state(bundle);
  const auto& all = bundle.critiques;
  std::vector<PlannedMessage> messages;
  std::set<CritiqueId> consumed;

  for (const auto& t : detect_triggers(all)) {
    auto find = [&](const CritiqueId& id) {
      return *std::find_if(all.begin(), all.end(), [&](const Critique& c) { return c.id == id; });
    };
    const Critique& a = find(t.primary_id);
    const Critique& b = find(t.secondary_id);
    Revision rev = t.kind == TriggerKind::Conflict ? revise_conflict(a, b) : revise_interactions(a, b);
    PlannedMessage m{std::move(rev.plan), {}, {a.id, b.id}, std::move(rev.conflicted), 0};
    m.order = std::min(a.order_index, b.order_index);
    messages.push_back(std::move(m));
    consumed.insert(a.id);
    consumed.insert(b.id);
    out.rules_fired.push_back(rule_name(t.kind));
    out.trace.push_back(rule_name(t.kind) + ": " + a.id.value + " + " + b.id.value + " on " +
                        t.pivot.value);
  }

  std::vector<Critique> omitted, others;
  for (const auto& c : all) {
    if (consumed.contains(c.id)) continue;
    (c.as<OmittedActions>() ? omitted : others).push_back(c);
  }

  MergeResult merged = combine_similar_intentions(omitted, weights);
  out.trace.insert(out.trace.end(), merged.trace.begin(), merged.trace.end());
  std::vector<MergeCandidate> hosts;
  for (const auto& s : merged.chosen) {
    hosts.push_back(s.candidate);
    out.rules_fired.push_back(kRuleCombine);
  }
  TrailingSelection trailing = select_trailing(hosts, merged.leftovers);

  // Recommendation messages first; schedules may attach to them.
  std::vector<PlannedMessage> recs;
  for (std::size_t h = 0; h < hosts.size(); ++h) {
    PlannedMessage m{candidate_plan(hosts[h], true), trailing.per_host[h], hosts[h].merged_ids, {}, 0};
    for (const auto& t : m.trailing) {
      m.sources.push_back(t.source_id);
      out.rules_fired.push_back(kRuleTrailing);
      out.trace.push_back(kRuleTrailing + ": " + t.source_id.value + " on " + t.focused_action.value);
    }
    m.order = order_of(m.sources, all);
    recs.push_back(std::move(m));
  }
  for (const auto& c : trailing.still_leftover)
    recs.push_back({build_plan(c), {}, {c.id}, {}, c.order_index});
  std::stable_sort(recs.begin(), recs.end(),
                   [](const auto& x, const auto& y) { return x.order < y.order; });

  std::sort(others.begin(), others.end(),
            [](const Critique& x, const Critique& y) { return x.order_index < y.order_index; });
  for (const auto& c : others) {
    if (auto* p = c.as<SchedulePriority>()) {
      auto host = std::find_if(recs.begin(), recs.end(), [&](const PlannedMessage& m) {
        const auto seg = last_segment_actions(m.plan.root);
        return std::all_of(p->do_first.begin(), p->do_first.end(), [&](const ActionId& a) {
          return std::find(seg.begin(), seg.end(), a) != seg.end();
        });
      });
      if (host != recs.end()) {
        host->plan.root = make_relation(RelationKind::Elaboration,
                                        {std::move(host->plan.root), build_plan(c).root});
        host->sources.push_back(c.id);
        host->order = std::min(host->order, c.order_index);
        out.rules_fired.push_back(kRuleAttach);
        out.trace.push_back(kRuleAttach + ": " + c.id.value + " onto message from " +
                            host->sources.front().value);
        continue;
      }
    }
    messages.push_back({build_plan(c), {}, {c.id}, disputed(c, out.start), c.order_index});
  }
  for (auto& m : recs) messages.push_back(std::move(m));

  if (!bundle.options.severity_labels)
    for (auto& m : messages) strip_labels(m.plan.root);
  std::stable_sort(messages.begin(), messages.end(),
                   [](const auto& x, const auto& y) { return x.order < y.order; });
  out.messages = std::move(messages);
  out.merges = std::move(merged.chosen);
  return out;
}

std::vector<OutputMessage> realize_messages(const std::vector<PlannedMessage>& messages,
                                            const Lexicon& lexicon, DiscourseState& state) {
  std::vector<OutputMessage> out;
  for (const auto& m : messages) {
    const DiscourseState before = mark_conflicted(state, m.conflicted);
    Realization r = realize(m.plan, before, lexicon, m.trailing);
    OutputMessage o{m, std::move(r.message), count_noun_phrases(m.plan, m.trailing), 0};
    o.focus_shifts = count_focus_shifts(o.realized, before);
    state = std::move(r.state);
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<PlannedMessage> baseline_messages(const CaseBundle& bundle) {
  const DiscourseState start = start_state(bundle);
  std::vector<Critique> sorted = bundle.critiques;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Critique& a, const Critique& b) { return a.order_index < b.order_index; });
  std::vector<PlannedMessage> out;
  for (const auto& c : sorted) {
    PlannedMessage m{build_plan(c), {}, {c.id}, disputed(c, start), c.order_index};
    if (!bundle.options.severity_labels) strip_labels(m.plan.root);
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<OutputMessage> realize_baseline(const CaseBundle& bundle) {
  const DiscourseState start = start_state(bundle);
  DiscourseState focus = start;  // only the stack is threaded, for shift counts
  std::vector<OutputMessage> out;
  for (const auto& m : baseline_messages(bundle)) {
    const DiscourseState before = mark_conflicted(start, m.conflicted);
    Realization r = realize(m.plan, before, bundle.lexicon);
    OutputMessage o{m, std::move(r.message), count_noun_phrases(m.plan), 0};
    o.focus_shifts = count_focus_shifts(o.realized, focus);
    focus = update_after_message(std::move(focus), o.realized.mentions());
    out.push_back(std::move(o));
  }
  return out;
}

CaseResult run_case(const CaseBundle& bundle, const MergeWeights& weights) {
  PlanResult planned = plan_case(bundle, weights);
  CaseResult out;

  out.baseline = realize_baseline(bundle);
  out.state = planned.start;
  out.messages = realize_messages(planned.messages, bundle.lexicon, out.state);

  auto& r = out.report;
  r.message_count_before = static_cast<int>(out.baseline.size());
  r.message_count_after = static_cast<int>(out.messages.size());
  for (const auto& m : out.baseline) {
    r.np_count_before += m.noun_phrases;
    r.focus_shifts_before += m.focus_shifts;
  }
  for (const auto& m : out.messages) {
    r.np_count_after += m.noun_phrases;
    r.focus_shifts_after += m.focus_shifts;
  }
  r.rules_fired = std::move(planned.rules_fired);
  out.merges = std::move(planned.merges);
  out.trace = std::move(planned.trace);
  return out;
}

std::vector<std::pair<ActionId, GoalId>> input_pairs(const CaseBundle& bundle) {
  std::vector<std::pair<ActionId, GoalId>> out;
  for (const auto& c : bundle.critiques) {
    if (auto* o = c.as<OmittedActions>()) {
      for (const auto& s : o->steps)
        for (const auto& g : s.goals) out.emplace_back(s.action, g);
    } else if (auto* p = c.as<PreferredAlternative>()) {
      out.emplace_back(p->preferred, p->purpose);
      out.emplace_back(p->dispreferred, p->purpose);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::pair<ActionId, GoalId>> output_pairs(const std::vector<PlannedMessage>& messages) {
  std::vector<std::pair<ActionId, GoalId>> out;
  for (const auto& m : messages) {
    auto p = motivation_pairs(m.plan);
    out.insert(out.end(), p.begin(), p.end());
    for (const auto& t : m.trailing) {
      for (const auto& g : t.purpose) {
        out.emplace_back(t.focused_action, g);
        for (const auto& a : t.companions) out.emplace_back(a, g);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace msgplan
