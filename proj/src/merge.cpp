#include "msgplan/merge.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace msgplan {

std::optional<GoalStatus> Segment::status_of(const GoalId& g) const {
  for (const auto& m : goal_statuses)
    if (m.goal == g) return m.status;
  return std::nullopt;
}

std::vector<ActionId> MergeCandidate::actions_in_order() const {
  std::vector<ActionId> out;
  for (const auto& s : segments)
    for (const auto& c : s.cells) out.insert(out.end(), c.actions.begin(), c.actions.end());
  return out;
}

namespace {

std::vector<Critique> sorted_by_order(std::span<const Critique> in) {
  std::vector<Critique> out(in.begin(), in.end());
  std::sort(out.begin(), out.end(),
            [](const Critique& a, const Critique& b) { return a.order_index < b.order_index; });
  return out;
}

bool overlaps(const Critique& a, const Critique& b) {
  const auto aa = critique_actions(a), ba = critique_actions(b);
  for (const auto& x : aa)
    if (std::find(ba.begin(), ba.end(), x) != ba.end()) return true;
  const auto ag = critique_goals(a), bg = critique_goals(b);
  for (const auto& x : ag)
    if (std::find(bg.begin(), bg.end(), x) != bg.end()) return true;
  return false;
}

// Components of the overlap graph, each in order_index order.
std::vector<std::vector<Critique>> components(const std::vector<Critique>& items) {
  const std::size_t n = items.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (overlaps(items[i], items[j])) parent[find(j)] = find(i);
  std::map<std::size_t, std::vector<Critique>> by_root;
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (!by_root.contains(r)) roots.push_back(r);
    by_root[r].push_back(items[i]);
  }
  std::vector<std::vector<Critique>> out;
  for (auto r : roots) out.push_back(std::move(by_root[r]));
  return out;
}

bool connected(const std::vector<Critique>& items) { return components(items).size() <= 1; }

bool is_partial(std::span<const Critique> group, const GoalId& g) {
  for (const auto& c : group)
    if (auto* o = c.as<OmittedActions>())
      if (std::find(o->partial_goals.begin(), o->partial_goals.end(), g) != o->partial_goals.end())
        return true;
  return false;
}

void assign_statuses(MergeCandidate& cand, std::span<const Critique> group) {
  std::vector<GoalId> goal_order;
  for (const auto& s : cand.segments)
    for (const auto& g : goals_in_order(s.cells))
      if (std::find(goal_order.begin(), goal_order.end(), g) == goal_order.end())
        goal_order.push_back(g);

  for (const auto& g : goal_order) {
    std::vector<std::size_t> segs;
    int cells_with_goal = 0;
    bool alone = false;
    for (std::size_t i = 0; i < cand.segments.size(); ++i) {
      bool here = false;
      for (const auto& c : cand.segments[i].cells) {
        if (std::find(c.signature.begin(), c.signature.end(), g) == c.signature.end()) continue;
        here = true;
        ++cells_with_goal;
        alone = c.signature.size() == 1;
      }
      if (here) segs.push_back(i);
    }
    const bool partial = is_partial(group, g);
    for (std::size_t k = 0; k < segs.size(); ++k) {
      GoalStatus st;
      if (partial)
        st = GoalStatus::Initiate;
      else if (segs.size() == 1)
        st = (cells_with_goal == 1 && alone) ? GoalStatus::Sole : GoalStatus::Initiate;
      else if (k == 0)
        st = GoalStatus::Initiate;
      else if (k + 1 == segs.size())
        st = GoalStatus::Complete;
      else
        st = GoalStatus::Shared;
      cand.segments[segs[k]].goal_statuses.push_back({g, st});
    }
  }
  // Keep each segment's statuses in the segment's own goal display order.
  for (auto& s : cand.segments) {
    std::vector<Motivate> ordered;
    for (const auto& g : goals_in_order(s.cells))
      for (const auto& m : s.goal_statuses)
        if (m.goal == g) ordered.push_back(m);
    s.goal_statuses = std::move(ordered);
  }
}

}  // namespace

std::vector<std::vector<Critique>> group_mergeable(std::span<const Critique> critiques) {
  const auto sorted = sorted_by_order(critiques);
  std::vector<Critique> omitted;
  for (const auto& c : sorted)
    if (c.as<OmittedActions>()) omitted.push_back(c);
  auto groups = components(omitted);
  for (const auto& c : sorted)
    if (!c.as<OmittedActions>()) groups.push_back({c});
  std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) {
    return a.front().order_index < b.front().order_index;
  });
  return groups;
}

CellOrder order_cells(std::span<const Critique> group) {
  const auto crits = sorted_by_order(group);

  // Goal display rank and per-action data, by first mention.
  std::map<GoalId, std::size_t> goal_rank;
  std::vector<ActionId> actions;
  std::map<ActionId, std::size_t> first_pos;
  std::map<ActionId, std::uint32_t> first_order;
  std::map<ActionId, std::set<GoalId>> goals_of;
  std::set<std::pair<ActionId, ActionId>> edges;

  for (const auto& c : crits) {
    const auto* o = c.as<OmittedActions>();
    if (!o) continue;
    for (std::size_t i = 0; i < o->steps.size(); ++i) {
      const Step& s = o->steps[i];
      if (!first_pos.contains(s.action)) {
        first_pos[s.action] = actions.size();
        first_order[s.action] = c.order_index;
        actions.push_back(s.action);
      }
      for (const auto& g : s.goals) {
        goal_rank.try_emplace(g, goal_rank.size());
        goals_of[s.action].insert(g);
      }
      if (i > 0) edges.insert({o->steps[i - 1].action, s.action});
    }
  }

  auto priority = [&](const ActionId& a) { return std::make_pair(first_order[a], first_pos[a]); };

  // Kahn's algorithm, always taking the ready action that was mentioned first.
  std::map<ActionId, int> indegree;
  for (const auto& a : actions) indegree[a] = 0;
  for (const auto& [from, to] : edges) ++indegree[to];
  std::vector<ActionId> order;
  std::set<ActionId> done;
  CellOrder out;
  while (order.size() < actions.size()) {
    std::optional<ActionId> pick;
    for (const auto& a : actions) {
      if (done.contains(a) || indegree[a] != 0) continue;
      if (!pick || priority(a) < priority(*pick)) pick = a;
    }
    if (!pick) {
      out.cycle = true;
      order = actions;
      std::stable_sort(order.begin(), order.end(),
                       [&](const ActionId& a, const ActionId& b) { return priority(a) < priority(b); });
      break;
    }
    order.push_back(*pick);
    done.insert(*pick);
    for (const auto& [from, to] : edges)
      if (from == *pick) --indegree[to];
  }

  for (const auto& a : order) {
    std::vector<GoalId> sig(goals_of[a].begin(), goals_of[a].end());
    std::sort(sig.begin(), sig.end(),
              [&](const GoalId& x, const GoalId& y) { return goal_rank[x] < goal_rank[y]; });
    if (!out.cells.empty() && out.cells.back().signature == sig)
      out.cells.back().actions.push_back(a);
    else
      out.cells.push_back(Cell{{a}, std::move(sig)});
  }
  return out;
}

std::vector<MergeCandidate> enumerate_candidates(const std::vector<Cell>& cells,
                                                 std::span<const Critique> group) {
  std::vector<MergeCandidate> out;
  const std::size_t n = cells.size();
  if (n == 0) return out;

  const auto crits = sorted_by_order(group);
  std::vector<CritiqueId> ids;
  Severity sev;
  bool first = true;
  for (const auto& c : crits) {
    ids.push_back(c.id);
    if (auto* o = c.as<OmittedActions>()) {
      sev = first ? o->severity : max_severity(sev, o->severity);
      first = false;
    }
  }

  auto emit = [&](const std::vector<std::size_t>& bounds) {
    MergeCandidate cand;
    cand.merged_ids = ids;
    cand.severity = sev;
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
      Segment seg;
      seg.cells.assign(cells.begin() + static_cast<std::ptrdiff_t>(bounds[i]),
                       cells.begin() + static_cast<std::ptrdiff_t>(bounds[i + 1]));
      cand.segments.push_back(std::move(seg));
    }
    assign_statuses(cand, group);
    out.push_back(std::move(cand));
  };

  emit({0, n});
  for (std::size_t a = 1; a < n; ++a) emit({0, a, n});
  for (std::size_t a = 1; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) emit({0, a, b, n});
  return out;
}

bool is_coherent(const MergeCandidate& c) {
  for (const auto& s : c.segments) {
    std::set<GoalId> seen;
    for (const auto& cell : s.cells)
      for (const auto& g : cell.signature)
        if (!seen.insert(g).second) return false;
  }
  return true;
}

int noun_phrase_count(const MergeCandidate& c) {
  int n = 0;
  for (const auto& s : c.segments)
    for (const auto& cell : s.cells)
      n += static_cast<int>(cell.actions.size()) + cell_goal_mentions(cell, s.goal_statuses);
  return n;
}

int noun_phrase_count(std::span<const Critique> originals) {
  int n = 0;
  for (const auto& c : originals) {
    const TextPlan plan = build_plan(c);
    const MotivatedSegment seg = unpack_segment(plan.root);
    if (!seg.recommend) continue;
    for (const auto& cell : seg.recommend->cells)
      n += static_cast<int>(cell.actions.size()) + cell_goal_mentions(cell, seg.motives);
  }
  return n;
}

bool is_admissible(const MergeCandidate& c, std::span<const Critique> originals) {
  return is_coherent(c) && c.segments.size() <= kMaxSegments &&
         noun_phrase_count(c) <= noun_phrase_count(originals);
}

ScoreBreakdown score(const MergeCandidate& candidate, std::span<const Critique> originals,
                     const MergeWeights& weights) {
  ScoreBreakdown b;
  std::map<GoalId, int> seg_count, cell_count;
  std::map<ActionId, int> cand_mentions, orig_mentions;
  for (const auto& s : candidate.segments) {
    std::set<GoalId> in_seg;
    for (const auto& cell : s.cells) {
      for (const auto& a : cell.actions) ++cand_mentions[a];
      for (const auto& g : cell.signature) {
        ++cell_count[g];
        in_seg.insert(g);
      }
    }
    for (const auto& g : in_seg) ++seg_count[g];
  }
  for (const auto& c : originals)
    if (auto* o = c.as<OmittedActions>())
      for (const auto& s : o->steps) ++orig_mentions[s.action];

  for (const auto& [g, n] : seg_count) b.t1_goal_spread += n;
  for (const auto& [a, n] : cand_mentions)
    if (n == 1) b.t2_action_repetition_saved += orig_mentions[a] - 1;
  for (const auto& [g, n] : cell_count) b.t3_goal_repetitions += n - 1;
  b.t4_critiques_merged = static_cast<int>(candidate.merged_ids.size());
  b.total = weights.w2 * b.t2_action_repetition_saved + weights.w4 * b.t4_critiques_merged -
            weights.w1 * b.t1_goal_spread - weights.w3 * b.t3_goal_repetitions;
  return b;
}

std::optional<ScoredCandidate> best_merge(std::span<const Critique> group,
                                          const MergeWeights& weights) {
  const auto crits = sorted_by_order(group);
  if (crits.size() < 2) return std::nullopt;

  std::vector<std::vector<Critique>> subsets{crits};
  if (crits.size() >= 3) {
    for (std::size_t skip = 0; skip < crits.size(); ++skip) {
      std::vector<Critique> sub;
      for (std::size_t i = 0; i < crits.size(); ++i)
        if (i != skip) sub.push_back(crits[i]);
      subsets.push_back(std::move(sub));
    }
  }

  std::optional<ScoredCandidate> best;
  std::uint32_t best_first = 0;
  for (const auto& sub : subsets) {
    if (!connected(sub)) continue;
    const auto cells = order_cells(sub).cells;
    for (auto& cand : enumerate_candidates(cells, sub)) {
      if (!is_admissible(cand, sub)) continue;
      ScoredCandidate sc{std::move(cand), {}};
      sc.breakdown = score(sc.candidate, sub, weights);
      const std::uint32_t first = sub.front().order_index;
      if (!best) {
        best = std::move(sc);
        best_first = first;
        continue;
      }
      // total desc, segments asc, goal repetitions asc, first order_index asc,
      // critiques merged desc; earlier enumeration wins remaining ties.
      const auto a = std::make_tuple(sc.breakdown.total,
                                     -static_cast<long>(sc.candidate.segments.size()),
                                     -sc.breakdown.t3_goal_repetitions, -static_cast<long>(first),
                                     sc.breakdown.t4_critiques_merged);
      const auto b = std::make_tuple(best->breakdown.total,
                                     -static_cast<long>(best->candidate.segments.size()),
                                     -best->breakdown.t3_goal_repetitions,
                                     -static_cast<long>(best_first),
                                     best->breakdown.t4_critiques_merged);
      if (a > b) {
        best = std::move(sc);
        best_first = first;
      }
    }
  }
  return best;
}

MergeResult combine_similar_intentions(std::span<const Critique> critiques,
                                       const MergeWeights& weights) {
  MergeResult result;
  std::set<CritiqueId> merged;
  std::vector<std::vector<Critique>> work;
  for (auto& g : group_mergeable(critiques))
    if (g.size() >= 2) work.push_back(std::move(g));

  while (!work.empty()) {
    std::vector<Critique> group = std::move(work.front());
    work.erase(work.begin());
    auto best = best_merge(group, weights);
    if (!best) continue;

    std::ostringstream os;
    os << "Combine-Similar-Intentions: merged";
    for (const auto& id : best->candidate.merged_ids) os << ' ' << id.value;
    os << " into " << best->candidate.segments.size() << " segment(s)";
    result.trace.push_back(os.str());

    std::vector<Critique> rest;
    for (const auto& c : group) {
      if (std::find(best->candidate.merged_ids.begin(), best->candidate.merged_ids.end(), c.id) !=
          best->candidate.merged_ids.end())
        merged.insert(c.id);
      else
        rest.push_back(c);
    }
    for (auto& g : components(rest))
      if (g.size() >= 2) work.push_back(std::move(g));
    result.chosen.push_back(std::move(*best));
  }

  std::sort(result.chosen.begin(), result.chosen.end(), [&](const auto& a, const auto& b) {
    auto first = [&](const ScoredCandidate& s) {
      std::uint32_t m = UINT32_MAX;
      for (const auto& c : critiques)
        if (c.id == s.candidate.merged_ids.front()) m = std::min(m, c.order_index);
      return m;
    };
    return first(a) < first(b);
  });

  for (const auto& c : sorted_by_order(critiques))
    if (!merged.contains(c.id)) result.leftovers.push_back(c);
  return result;
}

TextPlan candidate_plan(const MergeCandidate& c, bool severity_labels) {
  std::vector<PlanNode> segs;
  for (std::size_t i = 0; i < c.segments.size(); ++i) {
    Recommend rec{c.severity, severity_labels && i == 0, false, c.segments[i].cells};
    segs.push_back(make_motivated(std::move(rec), c.segments[i].goal_statuses));
  }
  if (segs.size() == 1) return {std::move(segs.front())};
  return {make_relation(RelationKind::Sequence, std::move(segs))};
}

}  // namespace msgplan
