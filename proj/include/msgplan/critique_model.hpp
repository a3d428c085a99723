#pragma once

// Logical-form vocabulary for critiques: actions, goals, severities and the
// lexicon that supplies their surface forms.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace msgplan {

template <typename Tag>
struct StrongId {
  std::string value;

  StrongId() = default;
  explicit StrongId(std::string v) : value(std::move(v)) {}

  auto operator<=>(const StrongId&) const = default;
  bool operator==(const StrongId&) const = default;
};

struct ActionTag {};
struct GoalTag {};
struct CritiqueTag {};

using ActionId = StrongId<ActionTag>;
using GoalId = StrongId<GoalTag>;
using CritiqueId = StrongId<CritiqueTag>;

inline constexpr std::string_view kArticleSlot = "<art>";

struct LexiconEntry {
  std::string imperative;  // "do <art> peritoneal lavage"
  std::string gerund;      // "doing <art> peritoneal lavage"
  bool has_article = false;

  bool operator==(const LexiconEntry&) const = default;
};

struct GoalDef {
  GoalId id;
  std::string gerund;      // "treating the intra-abdominal injury"
  std::string infinitive;  // "treat the intra-abdominal injury"

  bool operator==(const GoalDef&) const = default;
};

// Ordinal disutility. Caution outranks Consider.
enum class Level { Consider, Caution };
enum class Urgency { Unspecified, Now, Immediately };

struct Severity {
  Level level = Level::Caution;
  Urgency urgency = Urgency::Unspecified;

  bool operator==(const Severity&) const = default;
};

bool severity_is_consistent(const Severity& s);
Severity max_severity(const Severity& a, const Severity& b);

struct Step {
  ActionId action;
  std::vector<GoalId> goals;

  bool operator==(const Step&) const = default;
};

struct OmittedActions {
  Severity severity;
  std::vector<Step> steps;  // recommended execution order
  std::vector<GoalId> partial_goals;

  bool operator==(const OmittedActions&) const = default;
};

struct SchedulePriority {
  std::vector<ActionId> do_first;
  ActionId before;

  bool operator==(const SchedulePriority&) const = default;
};

struct PreconditionReminder {
  ActionId precondition;
  ActionId before;

  bool operator==(const PreconditionReminder&) const = default;
};

struct PostponeDependent {
  ActionId postponed;
  ActionId depends_on;

  bool operator==(const PostponeDependent&) const = default;
};

struct PreferredAlternative {
  ActionId preferred;
  ActionId dispreferred;
  GoalId purpose;

  bool operator==(const PreferredAlternative&) const = default;
};

using CritiqueKind = std::variant<OmittedActions, SchedulePriority, PreconditionReminder,
                                  PostponeDependent, PreferredAlternative>;

std::string kind_name(const CritiqueKind& kind);

struct Critique {
  CritiqueId id;
  CritiqueKind kind;
  std::uint32_t order_index = 0;

  bool operator==(const Critique&) const = default;

  template <typename K>
  const K* as() const {
    return std::get_if<K>(&kind);
  }
};

// Every action a critique mentions, in mention order, without duplicates.
std::vector<ActionId> critique_actions(const Critique& c);
// Every goal a critique mentions, in mention order, without duplicates.
std::vector<GoalId> critique_goals(const Critique& c);

// Surface vocabulary for one case: lexicon entries, action -> entry binding,
// and goal phrases.
struct Lexicon {
  std::map<std::string, LexiconEntry> entries;
  std::map<ActionId, std::string> action_keys;
  std::map<GoalId, GoalDef> goals;

  bool operator==(const Lexicon&) const = default;

  // Action ids without an explicit binding resolve to the entry of the same key.
  const LexiconEntry* find(const ActionId& a) const;
  const LexiconEntry& entry(const ActionId& a) const;  // throws LexiconError
  const GoalDef& goal(const GoalId& g) const;          // throws LexiconError
};

struct LexiconError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DiscourseState {
  std::vector<ActionId> focus_stack;  // most recent last
  std::vector<ActionId> shared_knowledge;  // kept sorted
  std::vector<ActionId> conflicted;        // kept sorted

  bool operator==(const DiscourseState&) const = default;

  bool is_shared(const ActionId& a) const;
  bool is_conflicted(const ActionId& a) const;
  std::optional<ActionId> top() const;
};

struct BundleOptions {
  bool severity_labels = true;

  bool operator==(const BundleOptions&) const = default;
};

// One planning turn's input.
struct CaseBundle {
  Lexicon lexicon;
  std::vector<Critique> critiques;
  std::vector<ActionId> cbmr;
  std::optional<DiscourseState> prior_state;
  BundleOptions options;

  bool operator==(const CaseBundle&) const = default;
};

struct Violation {
  std::string path;  // JSON-style path, e.g. critiques[2].steps[0].goals
  std::string message;

  bool operator==(const Violation&) const = default;
};

std::vector<Violation> validate_bundle(const CaseBundle& bundle);

}  // namespace msgplan

template <typename Tag>
struct std::hash<msgplan::StrongId<Tag>> {
  std::size_t operator()(const msgplan::StrongId<Tag>& id) const noexcept {
    return std::hash<std::string>{}(id.value);
  }
};
