#include "msgplan/critique_model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace msgplan {

bool severity_is_consistent(const Severity& s) {
  if (s.urgency == Urgency::Unspecified) return true;
  if (s.level == Level::Caution) return s.urgency == Urgency::Immediately;
  return s.urgency == Urgency::Now;
}

Severity max_severity(const Severity& a, const Severity& b) {
  if (a.level != b.level) return a.level > b.level ? a : b;
  return a.urgency >= b.urgency ? a : b;
}

std::string kind_name(const CritiqueKind& kind) {
  struct Namer {
    std::string operator()(const OmittedActions&) const { return "omitted_actions"; }
    std::string operator()(const SchedulePriority&) const { return "schedule_priority"; }
    std::string operator()(const PreconditionReminder&) const { return "precondition_reminder"; }
    std::string operator()(const PostponeDependent&) const { return "postpone_dependent"; }
    std::string operator()(const PreferredAlternative&) const { return "preferred_alternative"; }
  };
  return std::visit(Namer{}, kind);
}

namespace {

template <typename T>
void push_unique(std::vector<T>& out, const T& v) {
  if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
}

}  // namespace

std::vector<ActionId> critique_actions(const Critique& c) {
  std::vector<ActionId> out;
  if (auto* o = c.as<OmittedActions>()) {
    for (const auto& s : o->steps) push_unique(out, s.action);
  } else if (auto* p = c.as<SchedulePriority>()) {
    for (const auto& a : p->do_first) push_unique(out, a);
    push_unique(out, p->before);
  } else if (auto* r = c.as<PreconditionReminder>()) {
    push_unique(out, r->precondition);
    push_unique(out, r->before);
  } else if (auto* d = c.as<PostponeDependent>()) {
    push_unique(out, d->postponed);
    push_unique(out, d->depends_on);
  } else if (auto* a = c.as<PreferredAlternative>()) {
    push_unique(out, a->preferred);
    push_unique(out, a->dispreferred);
  }
  return out;
}

std::vector<GoalId> critique_goals(const Critique& c) {
  std::vector<GoalId> out;
  if (auto* o = c.as<OmittedActions>()) {
    for (const auto& s : o->steps)
      for (const auto& g : s.goals) push_unique(out, g);
  } else if (auto* a = c.as<PreferredAlternative>()) {
    out.push_back(a->purpose);
  }
  return out;
}

const LexiconEntry* Lexicon::find(const ActionId& a) const {
  auto key = action_keys.find(a);
  const std::string& k = key == action_keys.end() ? a.value : key->second;
  auto it = entries.find(k);
  return it == entries.end() ? nullptr : &it->second;
}

const LexiconEntry& Lexicon::entry(const ActionId& a) const {
  if (auto* e = find(a)) return *e;
  throw LexiconError("no lexicon entry for action '" + a.value + "'");
}

const GoalDef& Lexicon::goal(const GoalId& g) const {
  auto it = goals.find(g);
  if (it == goals.end()) throw LexiconError("unknown goal '" + g.value + "'");
  return it->second;
}

bool DiscourseState::is_shared(const ActionId& a) const {
  return std::binary_search(shared_knowledge.begin(), shared_knowledge.end(), a);
}

bool DiscourseState::is_conflicted(const ActionId& a) const {
  return std::binary_search(conflicted.begin(), conflicted.end(), a);
}

std::optional<ActionId> DiscourseState::top() const {
  if (focus_stack.empty()) return std::nullopt;
  return focus_stack.back();
}

namespace {

std::size_t count_slots(std::string_view s) {
  std::size_t n = 0;
  for (auto pos = s.find(kArticleSlot); pos != std::string_view::npos;
       pos = s.find(kArticleSlot, pos + kArticleSlot.size()))
    ++n;
  return n;
}

class Checker {
 public:
  explicit Checker(const CaseBundle& b) : bundle_(b) {}

  std::vector<Violation> run() {
    check_lexicon();
    check_critiques();
    for (std::size_t i = 0; i < bundle_.cbmr.size(); ++i)
      check_action(bundle_.cbmr[i], path("cbmr", i));
    if (bundle_.prior_state) check_state(*bundle_.prior_state);
    return std::move(out_);
  }

 private:
  static std::string path(std::string_view base, std::size_t i) {
    std::ostringstream os;
    os << base << '[' << i << ']';
    return os.str();
  }

  void add(std::string p, std::string msg) { out_.push_back({std::move(p), std::move(msg)}); }

  void check_lexicon() {
    for (const auto& [key, e] : bundle_.lexicon.entries) {
      const std::string p = "lexicon." + key;
      const std::size_t want = e.has_article ? 1 : 0;
      if (count_slots(e.imperative) != want || count_slots(e.gerund) != want)
        add(p, e.has_article ? "has_article requires exactly one <art> slot in each template"
                             : "template contains <art> but has_article is false");
      if (e.imperative.empty() || e.gerund.empty()) add(p, "empty template");
    }
    for (const auto& [action, key] : bundle_.lexicon.action_keys)
      if (!bundle_.lexicon.entries.contains(key))
        add("actions." + action.value, "lexicon_key '" + key + "' does not resolve");
    for (const auto& [id, g] : bundle_.lexicon.goals) {
      if (g.gerund.empty()) add("goals." + id.value, "gerund phrase is empty");
      if (g.infinitive.empty()) add("goals." + id.value, "infinitive phrase is empty");
    }
  }

  void check_action(const ActionId& a, const std::string& p) {
    if (!bundle_.lexicon.find(a)) add(p, "action '" + a.value + "' has no lexicon entry");
  }

  void check_goal(const GoalId& g, const std::string& p) {
    if (!bundle_.lexicon.goals.contains(g)) add(p, "goal '" + g.value + "' is not defined");
  }

  void check_critiques() {
    std::set<CritiqueId> ids;
    std::set<std::uint32_t> orders;
    for (std::size_t i = 0; i < bundle_.critiques.size(); ++i) {
      const Critique& c = bundle_.critiques[i];
      const std::string p = path("critiques", i);
      if (c.id.value.empty()) add(p + ".id", "empty critique id");
      if (!ids.insert(c.id).second) add(p + ".id", "duplicate critique id '" + c.id.value + "'");
      if (!orders.insert(c.order_index).second)
        add(p + ".order_index", "duplicate order_index in critique '" + c.id.value + "'");
      std::visit([&](const auto& k) { check_kind(k, p); }, c.kind);
    }
  }

  void check_severity(const Severity& s, const std::string& p) {
    if (!severity_is_consistent(s))
      add(p, "urgency does not match level (caution/immediately, consider/now)");
  }

  void check_kind(const OmittedActions& k, const std::string& p) {
    check_severity(k.severity, p + ".severity");
    if (k.steps.empty()) add(p + ".steps", "omitted-actions critique has no steps");
    std::set<ActionId> seen;
    std::set<GoalId> goals;
    for (std::size_t s = 0; s < k.steps.size(); ++s) {
      const Step& step = k.steps[s];
      const std::string sp = path(p + ".steps", s);
      check_action(step.action, sp + ".action");
      if (!seen.insert(step.action).second)
        add(sp + ".action", "action '" + step.action.value + "' repeated within critique");
      if (step.goals.empty()) add(sp + ".goals", "step has an empty goal set");
      std::set<GoalId> local;
      for (std::size_t g = 0; g < step.goals.size(); ++g) {
        check_goal(step.goals[g], path(sp + ".goals", g));
        if (!local.insert(step.goals[g]).second)
          add(path(sp + ".goals", g), "goal repeated within step");
        goals.insert(step.goals[g]);
      }
    }
    for (std::size_t g = 0; g < k.partial_goals.size(); ++g)
      if (!goals.contains(k.partial_goals[g]))
        add(path(p + ".partial_goals", g), "partial goal is not served by any step");
  }

  void check_kind(const SchedulePriority& k, const std::string& p) {
    if (k.do_first.empty()) add(p + ".do_first", "priority critique names no actions");
    for (std::size_t i = 0; i < k.do_first.size(); ++i) {
      check_action(k.do_first[i], path(p + ".do_first", i));
      if (k.do_first[i] == k.before) add(path(p + ".do_first", i), "action scheduled before itself");
    }
    check_action(k.before, p + ".before");
  }

  void check_kind(const PreconditionReminder& k, const std::string& p) {
    check_action(k.precondition, p + ".precondition");
    check_action(k.before, p + ".before");
    if (k.precondition == k.before) add(p, "precondition equals the scheduled action");
  }

  void check_kind(const PostponeDependent& k, const std::string& p) {
    check_action(k.postponed, p + ".postponed");
    check_action(k.depends_on, p + ".depends_on");
    if (k.postponed == k.depends_on) add(p, "postponed action depends on itself");
  }

  void check_kind(const PreferredAlternative& k, const std::string& p) {
    check_action(k.preferred, p + ".preferred");
    check_action(k.dispreferred, p + ".dispreferred");
    check_goal(k.purpose, p + ".purpose");
    if (k.preferred == k.dispreferred) add(p, "preferred equals dispreferred");
  }

  void check_state(const DiscourseState& s) {
    std::set<ActionId> seen;
    for (std::size_t i = 0; i < s.focus_stack.size(); ++i)
      if (!seen.insert(s.focus_stack[i]).second)
        add(path("state.focus_stack", i), "duplicate entry on focus stack");
  }

  const CaseBundle& bundle_;
  std::vector<Violation> out_;
};

}  // namespace

std::vector<Violation> validate_bundle(const CaseBundle& bundle) { return Checker(bundle).run(); }

}  // namespace msgplan
