#include "msgplan/text_plan.hpp"

#include <algorithm>
#include <sstream>

namespace msgplan {

bool RelationNode::operator==(const RelationNode& o) const {
  return relation == o.relation && children == o.children;
}

std::string relation_name(RelationKind r) {
  switch (r) {
    case RelationKind::Sequence: return "SEQUENCE";
    case RelationKind::Motivation: return "MOTIVATION";
    case RelationKind::Concession: return "CONCESSION";
    case RelationKind::Condition: return "CONDITION";
    case RelationKind::Elaboration: return "ELABORATION";
  }
  return "?";
}

std::string status_name(GoalStatus s) {
  switch (s) {
    case GoalStatus::Sole: return "sole";
    case GoalStatus::Initiate: return "initiate";
    case GoalStatus::Shared: return "shared";
    case GoalStatus::Complete: return "complete";
  }
  return "?";
}

PlanNode make_act(CommunicativeAct act) { return PlanNode{std::move(act)}; }

PlanNode make_relation(RelationKind r, std::vector<PlanNode> children) {
  return PlanNode{RelationNode{r, std::move(children)}};
}

PlanNode make_motivated(Recommend rec, const std::vector<Motivate>& motives) {
  PlanNode node = make_act(std::move(rec));
  for (const auto& m : motives)
    node = make_relation(RelationKind::Motivation, {std::move(node), make_act(m)});
  return node;
}

std::vector<GoalId> goals_in_order(const std::vector<Cell>& cells) {
  std::vector<GoalId> out;
  for (const auto& c : cells)
    for (const auto& g : c.signature)
      if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  return out;
}

bool same_signature(const std::vector<GoalId>& a, const std::vector<GoalId>& b) {
  if (a.size() != b.size()) return false;
  auto x = a, y = b;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

GoalStatus status_for(const std::vector<Motivate>& motives, const GoalId& g) {
  for (const auto& m : motives)
    if (m.goal == g) return m.status;
  return GoalStatus::Sole;
}

bool cell_is_anaphoric(const Cell& cell, const std::vector<Motivate>& motives) {
  if (cell.signature.size() < 2) return false;
  bool any_shared = false;
  for (const auto& g : cell.signature) {
    const GoalStatus s = status_for(motives, g);
    if (s == GoalStatus::Sole || s == GoalStatus::Initiate) return false;
    any_shared = any_shared || s == GoalStatus::Shared;
  }
  return any_shared;
}

int cell_goal_mentions(const Cell& cell, const std::vector<Motivate>& motives) {
  return cell_is_anaphoric(cell, motives) ? 1 : static_cast<int>(cell.signature.size());
}

namespace {

void check_node(const PlanNode& n, std::vector<std::string>& out) {
  if (auto* r = n.relation()) {
    const std::size_t k = r->children.size();
    if (r->relation == RelationKind::Sequence) {
      if (k < 2) out.push_back("SEQUENCE needs at least two children");
    } else if (k != 2) {
      out.push_back(relation_name(r->relation) + " needs exactly two children");
    }
    for (const auto& c : r->children) check_node(c, out);
    return;
  }
  if (auto* rec = n.act_as<Recommend>()) {
    if (rec->cells.empty()) out.push_back("RECOMMEND without cells");
    for (const auto& c : rec->cells)
      if (c.actions.empty() || c.signature.empty()) out.push_back("empty cell");
  }
}

void collect_pairs(const PlanNode& n, std::vector<std::pair<ActionId, GoalId>>& out) {
  if (auto* r = n.relation()) {
    for (const auto& c : r->children) collect_pairs(c, out);
    return;
  }
  if (auto* rec = n.act_as<Recommend>()) {
    for (const auto& c : rec->cells)
      for (const auto& a : c.actions)
        for (const auto& g : c.signature) out.emplace_back(a, g);
  } else if (auto* p = n.act_as<Prefer>()) {
    out.emplace_back(p->preferred, p->purpose);
    out.emplace_back(p->dispreferred, p->purpose);
  }
}

void join_ids(std::ostream& os, const auto& ids) {
  bool first = true;
  for (const auto& id : ids) {
    if (!first) os << ' ';
    os << id.value;
    first = false;
  }
}

std::string level_name(const Severity& s) {
  std::string out = s.level == Level::Caution ? "caution" : "consider";
  if (s.urgency == Urgency::Immediately) out += "/immediately";
  if (s.urgency == Urgency::Now) out += "/now";
  return out;
}

std::string reason_name(ScheduleReason r) {
  switch (r) {
    case ScheduleReason::Priority: return "priority";
    case ScheduleReason::Dependency: return "dependency";
    case ScheduleReason::Reminder: return "reminder";
  }
  return "?";
}

void dump_node(const PlanNode& n, int depth, std::ostringstream& os) {
  os << std::string(static_cast<std::size_t>(depth) * 2, ' ');
  if (auto* r = n.relation()) {
    os << relation_name(r->relation) << '\n';
    for (const auto& c : r->children) dump_node(c, depth + 1, os);
    return;
  }
  struct Printer {
    std::ostringstream& os;
    void operator()(const Recommend& r) const {
      os << "RECOMMEND " << level_name(r.severity);
      if (!r.show_level) os << " unlabeled";
      if (!r.show_urgency) os << " no-urgency";
      for (const auto& c : r.cells) {
        os << " [";
        join_ids(os, c.actions);
        os << " -> ";
        join_ids(os, c.signature);
        os << ']';
      }
    }
    void operator()(const Motivate& m) const {
      os << "MOTIVATE " << m.goal.value << ' ' << status_name(m.status);
    }
    void operator()(const Schedule& s) const {
      os << "SCHEDULE " << reason_name(s.reason) << " [";
      join_ids(os, s.do_first);
      os << "] before " << s.before.value;
    }
    void operator()(const Prefer& p) const {
      os << "PREFER " << p.preferred.value << " over " << p.dispreferred.value << " for "
         << p.purpose.value;
    }
    void operator()(const Decide& d) const {
      os << "DECIDE " << d.decided.value << " from " << d.basis.value;
    }
    void operator()(const Assume& a) const { os << "ASSUME " << a.action.value; }
  };
  std::visit(Printer{os}, *n.act());
  os << '\n';
}

}  // namespace

std::vector<std::string> check_plan(const TextPlan& plan) {
  std::vector<std::string> out;
  check_node(plan.root, out);
  return out;
}

MotivatedSegment unpack_segment(const PlanNode& node) {
  MotivatedSegment seg;
  const PlanNode* cur = &node;
  std::vector<Motivate> reversed;
  while (auto* r = cur->relation()) {
    if (r->relation != RelationKind::Motivation || r->children.size() != 2) return {};
    auto* m = r->children[1].act_as<Motivate>();
    if (!m) return {};
    reversed.push_back(*m);
    cur = &r->children[0];
  }
  seg.recommend = cur->act_as<Recommend>();
  if (!seg.recommend) return {};
  seg.motives.assign(reversed.rbegin(), reversed.rend());
  return seg;
}

std::vector<std::pair<ActionId, GoalId>> motivation_pairs(const TextPlan& plan) {
  std::vector<std::pair<ActionId, GoalId>> out;
  collect_pairs(plan.root, out);
  return out;
}

TextPlan build_plan(const Critique& critique) {
  if (auto* o = critique.as<OmittedActions>()) {
    Recommend rec{o->severity, true, true, {}};
    for (const auto& step : o->steps) {
      if (!rec.cells.empty() && same_signature(rec.cells.back().signature, step.goals))
        rec.cells.back().actions.push_back(step.action);
      else
        rec.cells.push_back(Cell{{step.action}, step.goals});
    }
    std::vector<Motivate> motives;
    for (const auto& g : goals_in_order(rec.cells)) {
      const bool partial =
          std::find(o->partial_goals.begin(), o->partial_goals.end(), g) != o->partial_goals.end();
      motives.push_back({g, partial ? GoalStatus::Initiate : GoalStatus::Sole});
    }
    return {make_motivated(std::move(rec), motives)};
  }
  if (auto* p = critique.as<SchedulePriority>())
    return {make_act(Schedule{p->do_first, p->before, ScheduleReason::Priority})};
  if (auto* r = critique.as<PreconditionReminder>())
    return {make_act(Schedule{{r->precondition}, r->before, ScheduleReason::Reminder})};
  if (auto* d = critique.as<PostponeDependent>())
    return {make_act(Schedule{{d->depends_on}, d->postponed, ScheduleReason::Dependency})};
  const auto& a = std::get<PreferredAlternative>(critique.kind);
  return {make_act(Prefer{a.preferred, a.dispreferred, a.purpose})};
}

std::string dump_plan(const TextPlan& plan) {
  std::ostringstream os;
  dump_node(plan.root, 0, os);
  return os.str();
}

}  // namespace msgplan
