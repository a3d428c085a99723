#include "msgplan/revision.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace msgplan {

std::string rule_name(TriggerKind k) {
  return k == TriggerKind::Conflict ? "Revise-Conflict" : "Revise-Interactions";
}

std::optional<ActionId> scheduled_action(const Critique& c) {
  if (auto* p = c.as<SchedulePriority>()) return p->before;
  if (auto* r = c.as<PreconditionReminder>()) return r->before;
  if (auto* d = c.as<PostponeDependent>()) return d->postponed;
  return std::nullopt;
}

namespace {

bool recommends(const Critique& c, const ActionId& a) {
  auto* o = c.as<OmittedActions>();
  return o && std::any_of(o->steps.begin(), o->steps.end(),
                          [&](const Step& s) { return s.action == a; });
}

std::optional<RevisionTrigger> conflict_between(const Critique& x, const Critique& y) {
  const Critique* pref = x.as<PreferredAlternative>() ? &x : y.as<PreferredAlternative>() ? &y : nullptr;
  if (!pref) return std::nullopt;
  const Critique& other = pref == &x ? y : x;
  const auto sched = scheduled_action(other);
  const auto& alt = std::get<PreferredAlternative>(pref->kind);
  if (!sched || *sched != alt.dispreferred) return std::nullopt;
  return RevisionTrigger{TriggerKind::Conflict, pref->id, other.id, alt.dispreferred};
}

std::optional<RevisionTrigger> interaction_between(const Critique& x, const Critique& y) {
  const Critique* post = x.as<PostponeDependent>() ? &x : y.as<PostponeDependent>() ? &y : nullptr;
  if (!post) return std::nullopt;
  const Critique& other = post == &x ? y : x;
  const auto& dep = std::get<PostponeDependent>(post->kind);
  if (!recommends(other, dep.depends_on)) return std::nullopt;
  return RevisionTrigger{TriggerKind::Interaction, post->id, other.id, dep.depends_on};
}

}  // namespace

std::vector<RevisionTrigger> detect_triggers(std::span<const Critique> critiques) {
  std::vector<Critique> sorted(critiques.begin(), critiques.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const Critique& a, const Critique& b) { return a.order_index < b.order_index; });

  // (low order_index, high order_index, kind) -> trigger; sorted iteration
  // makes claiming deterministic.
  std::vector<std::tuple<std::uint32_t, std::uint32_t, int, RevisionTrigger>> candidates;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      const auto lo = sorted[i].order_index, hi = sorted[j].order_index;
      if (auto t = conflict_between(sorted[i], sorted[j])) candidates.emplace_back(lo, hi, 0, *t);
      if (auto t = interaction_between(sorted[i], sorted[j])) candidates.emplace_back(lo, hi, 1, *t);
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a), std::get<2>(a)) <
           std::tie(std::get<0>(b), std::get<1>(b), std::get<2>(b));
  });

  std::set<CritiqueId> used;
  std::vector<RevisionTrigger> out;
  for (const auto& cand : candidates) {
    const auto& t = std::get<3>(cand);
    if (used.contains(t.primary_id) || used.contains(t.secondary_id)) continue;
    used.insert(t.primary_id);
    used.insert(t.secondary_id);
    out.push_back(t);
  }
  return out;
}

Revision revise_conflict(const Critique& a, const Critique& b) {
  const auto trigger = conflict_between(a, b);
  if (!trigger)
    throw RevisionError("Revise-Conflict needs a preferred alternative and a scheduling critique "
                        "about its dispreferred action");
  const Critique& pref = a.id == trigger->primary_id ? a : b;
  const Critique& sched = a.id == trigger->primary_id ? b : a;
  const auto& alt = std::get<PreferredAlternative>(pref.kind);

  const TextPlan scheduled = build_plan(sched);
  PlanNode condition = make_relation(RelationKind::Condition,
                                     {scheduled.root, make_act(Assume{trigger->pivot})});
  PlanNode root = make_relation(
      RelationKind::Concession,
      {make_act(Prefer{alt.preferred, alt.dispreferred, alt.purpose}), std::move(condition)});
  return {TextPlan{std::move(root)}, {trigger->pivot}};
}

Revision revise_interactions(const Critique& a, const Critique& b) {
  const auto trigger = interaction_between(a, b);
  if (!trigger)
    throw RevisionError("Revise-Interactions needs a postponement whose prerequisite the other "
                        "critique recommends");
  const Critique& post = a.id == trigger->primary_id ? a : b;
  const Critique& exec = a.id == trigger->primary_id ? b : a;
  const auto& dep = std::get<PostponeDependent>(post.kind);

  // The executing critique keeps its urgency but loses its severity label;
  // the sequence itself now carries the message.
  const auto& omitted = std::get<OmittedActions>(exec.kind);
  Recommend rec{omitted.severity, false, true, {}};
  TextPlan exec_plan = build_plan(exec);
  const MotivatedSegment seg = unpack_segment(exec_plan.root);
  rec.cells = seg.recommend->cells;
  PlanNode first = make_motivated(std::move(rec), seg.motives);

  PlanNode root = make_relation(RelationKind::Sequence,
                                {std::move(first), make_act(Decide{dep.depends_on, dep.postponed})});
  return {TextPlan{std::move(root)}, {}};
}

}  // namespace msgplan
