#pragma once

// Revision rules for interacting critique pairs.
//
// Revise-Conflict: a scheduling critique about an action that another critique
// would replace.  The pair becomes one message that concedes the dispreferred
// action might still be done and makes the scheduling advice conditional on it.
//
// Revise-Interactions: a critique postponing an action until another is done,
// next to a critique recommending that other action.  The pair becomes a
// Sequence: do the action, then use its results to decide.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "msgplan/critique_model.hpp"
#include "msgplan/text_plan.hpp"

namespace msgplan {

enum class TriggerKind { Conflict, Interaction };

std::string rule_name(TriggerKind k);  // "Revise-Conflict" / "Revise-Interactions"

struct RevisionTrigger {
  TriggerKind kind = TriggerKind::Conflict;
  // Conflict: preferred-alternative critique, scheduling critique.
  // Interaction: postponing critique, executing critique.
  CritiqueId primary_id;
  CritiqueId secondary_id;
  ActionId pivot;

  bool operator==(const RevisionTrigger&) const = default;
};

struct RevisionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The action whose execution a scheduling critique constrains, if any.
std::optional<ActionId> scheduled_action(const Critique& c);

// Each critique takes part in at most one trigger; pairs are claimed in order
// of their lowest, then highest, order_index.
std::vector<RevisionTrigger> detect_triggers(std::span<const Critique> critiques);

struct Revision {
  TextPlan plan;
  std::vector<ActionId> conflicted;
};

// Either argument order is accepted.
Revision revise_conflict(const Critique& a, const Critique& b);
Revision revise_interactions(const Critique& a, const Critique& b);

}  // namespace msgplan
