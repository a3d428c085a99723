#pragma once

// Phrase-level helpers shared by the message realizer and trailing comments.
// A PhraseBuilder owns the working discourse state for one message: every
// action it renders is recorded as a mention, so reference choices later in
// the same message see earlier ones.

#include <string>
#include <string_view>
#include <vector>

#include "msgplan/critique_model.hpp"

namespace msgplan {

struct RealizedSentence {
  std::string text;
  std::vector<ActionId> mentions;  // in surface order
  int goal_mentions = 0;

  bool operator==(const RealizedSentence&) const = default;
};

struct RealizedMessage {
  std::vector<RealizedSentence> sentences;

  std::string text() const;  // sentences joined by single spaces
  std::vector<ActionId> mentions() const;
  int noun_phrases() const;
};

// "a", "a and b", "a, b, and c".
std::string join_list(const std::vector<std::string>& items);
std::string capitalize(std::string s);
std::string lowercase_first(std::string s);

enum class VerbForm { Imperative, Gerund };

class PhraseBuilder {
 public:
  PhraseBuilder(const Lexicon& lexicon, DiscourseState state)
      : lexicon_(lexicon), state_(std::move(state)) {}

  const DiscourseState& state() const { return state_; }
  DiscourseState take_state() && { return std::move(state_); }

  // Renders one action and records the mention.
  std::string action(const ActionId& a, VerbForm form);
  // The bare noun phrase ("the peritoneal lavage"); falls back to the gerund
  // for entries without an article slot.
  std::string noun_phrase(const ActionId& a);

  // Words shared by the start of every template (never past the article slot,
  // never a whole template).  Empty unless there are at least two actions.
  std::vector<std::string> common_prefix(const std::vector<ActionId>& actions,
                                         VerbForm form) const;
  // Renders the action with the first `skip` words removed.
  std::string action_without_prefix(const ActionId& a, VerbForm form, std::size_t skip);

  std::string goal_gerund(const GoalId& g);
  std::string goal_infinitive(const GoalId& g);
  // An anaphoric reference to goals already named ("these goals").
  void goal_anaphor() { ++goal_mentions_; }

  // Sentence boundary: returns the mentions gathered since the last call.
  RealizedSentence finish(std::string text);

 private:
  std::string render(const ActionId& a, VerbForm form);

  const Lexicon& lexicon_;
  DiscourseState state_;
  std::vector<ActionId> pending_;
  int goal_mentions_ = 0;
};

}  // namespace msgplan
