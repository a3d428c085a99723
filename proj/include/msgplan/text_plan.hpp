#pragma once

// RST text-plan IR shared by every planning pass, plus the builder that turns
// one critique into its stand-alone plan.

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "msgplan/critique_model.hpp"

namespace msgplan {

enum class RelationKind { Sequence, Motivation, Concession, Condition, Elaboration };

// Realized as "to", "as part of", "to address both of these goals", "to complete".
enum class GoalStatus { Sole, Initiate, Shared, Complete };

std::string relation_name(RelationKind r);
std::string status_name(GoalStatus s);

struct Cell {
  std::vector<ActionId> actions;
  std::vector<GoalId> signature;  // set semantics; order is display order

  bool operator==(const Cell&) const = default;
};

struct Recommend {
  Severity severity;
  bool show_level = true;    // "Caution:" / "Consider"
  bool show_urgency = true;  // "immediately" / "now"
  std::vector<Cell> cells;

  bool operator==(const Recommend&) const = default;
};

struct Motivate {
  GoalId goal;
  GoalStatus status = GoalStatus::Sole;

  bool operator==(const Motivate&) const = default;
};

enum class ScheduleReason { Priority, Dependency, Reminder };

// Priority: do_first before `before`.  Reminder: do_first = {precondition}.
// Dependency: do_first = {depends_on}, before = postponed action.
struct Schedule {
  std::vector<ActionId> do_first;
  ActionId before;
  ScheduleReason reason = ScheduleReason::Priority;

  bool operator==(const Schedule&) const = default;
};

struct Prefer {
  ActionId preferred;
  ActionId dispreferred;
  GoalId purpose;

  bool operator==(const Prefer&) const = default;
};

// "Use the results of <basis> to decide whether or not to <decided>."
struct Decide {
  ActionId basis;
  ActionId decided;

  bool operator==(const Decide&) const = default;
};

// Hypothetical premise of a Condition: "if you <action>".
struct Assume {
  ActionId action;

  bool operator==(const Assume&) const = default;
};

using CommunicativeAct = std::variant<Recommend, Motivate, Schedule, Prefer, Decide, Assume>;

struct PlanNode;

struct RelationNode {
  RelationKind relation = RelationKind::Sequence;
  std::vector<PlanNode> children;  // binary relations: nucleus, satellite

  bool operator==(const RelationNode&) const;
};

struct PlanNode {
  std::variant<RelationNode, CommunicativeAct> node;

  bool operator==(const PlanNode&) const = default;

  bool is_act() const { return std::holds_alternative<CommunicativeAct>(node); }
  const RelationNode* relation() const { return std::get_if<RelationNode>(&node); }
  const CommunicativeAct* act() const { return std::get_if<CommunicativeAct>(&node); }
  template <typename A>
  const A* act_as() const {
    auto* a = act();
    return a ? std::get_if<A>(a) : nullptr;
  }
};

PlanNode make_act(CommunicativeAct act);
PlanNode make_relation(RelationKind r, std::vector<PlanNode> children);
// Nucleus motivated by one Motivate satellite per goal, nested left-deep.
PlanNode make_motivated(Recommend rec, const std::vector<Motivate>& motives);

struct TextPlan {
  PlanNode root;

  bool operator==(const TextPlan&) const = default;
};

// Structural problems; empty when the tree respects the arity rules.
std::vector<std::string> check_plan(const TextPlan& plan);

// A Motivation chain flattened back into its recommendation and motives.
struct MotivatedSegment {
  const Recommend* recommend = nullptr;
  std::vector<Motivate> motives;
};
// Returns a segment with recommend == nullptr if `node` is not such a chain.
MotivatedSegment unpack_segment(const PlanNode& node);

// Every (action, goal) motivation pair recoverable from the plan.
std::vector<std::pair<ActionId, GoalId>> motivation_pairs(const TextPlan& plan);

TextPlan build_plan(const Critique& critique);

// Goals of the cells in first-mention order.
std::vector<GoalId> goals_in_order(const std::vector<Cell>& cells);

// True when two signatures hold the same goals, ignoring order.
bool same_signature(const std::vector<GoalId>& a, const std::vector<GoalId>& b);

GoalStatus status_for(const std::vector<Motivate>& motives, const GoalId& g);

// A multi-goal cell whose goals were all introduced earlier, at least one of
// them continuing, is realized anaphorically ("to address both of these goals").
bool cell_is_anaphoric(const Cell& cell, const std::vector<Motivate>& motives);
// Goal noun phrases the cell's purpose clause realizes.
int cell_goal_mentions(const Cell& cell, const std::vector<Motivate>& motives);

// Indented debug rendering, one node per line.
std::string dump_plan(const TextPlan& plan);

}  // namespace msgplan
