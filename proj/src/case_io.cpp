#include "msgplan/case_io.hpp"

#include <algorithm>
#include <fstream>

namespace msgplan {

using nlohmann::json;

CaseParseError::CaseParseError(std::string p, const std::string& message)
    : std::runtime_error(p + ": " + message), path(std::move(p)) {}

namespace {

std::string at(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}
std::string at(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw CaseParseError(path.empty() ? "(root)" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw CaseParseError(at(path, key), "missing field");
  return *it;
}

std::string str(const json& j, const std::string& path) {
  if (!j.is_string()) throw CaseParseError(path, "expected a string");
  return j.get<std::string>();
}

std::string str_field(const json& j, const std::string& key, const std::string& path) {
  return str(field(j, key, path), at(path, key));
}

template <typename Id>
std::vector<Id> id_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw CaseParseError(path, "expected an array");
  std::vector<Id> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.emplace_back(str(j[i], at(path, i)));
  return out;
}

template <typename Id>
std::vector<Id> optional_ids(const json& j, const std::string& key, const std::string& path) {
  return j.contains(key) ? id_list<Id>(j.at(key), at(path, key)) : std::vector<Id>{};
}

template <typename Id>
json ids_to_json(const std::vector<Id>& ids) {
  json out = json::array();
  for (const auto& id : ids) out.push_back(id.value);
  return out;
}

// Templates may spell the slot "<art>" or "⟨art⟩".
std::string normalize_slot(std::string s) {
  static const std::string unicode = "\xE2\x9F\xA8" "art" "\xE2\x9F\xA9";
  for (auto p = s.find(unicode); p != std::string::npos; p = s.find(unicode))
    s.replace(p, unicode.size(), std::string(kArticleSlot));
  return s;
}

Severity severity_from_json(const json& j, const std::string& path) {
  Severity s;
  const std::string level = str_field(j, "level", path);
  if (level == "caution")
    s.level = Level::Caution;
  else if (level == "consider")
    s.level = Level::Consider;
  else
    throw CaseParseError(at(path, "level"), "expected \"caution\" or \"consider\"");
  const std::string urgency = j.contains("urgency") ? str(j["urgency"], at(path, "urgency")) : "unspecified";
  if (urgency == "immediately")
    s.urgency = Urgency::Immediately;
  else if (urgency == "now")
    s.urgency = Urgency::Now;
  else if (urgency == "unspecified")
    s.urgency = Urgency::Unspecified;
  else
    throw CaseParseError(at(path, "urgency"), "expected \"immediately\", \"now\" or \"unspecified\"");
  return s;
}

json severity_to_json(const Severity& s) {
  const char* urgency = s.urgency == Urgency::Immediately ? "immediately"
                        : s.urgency == Urgency::Now       ? "now"
                                                          : "unspecified";
  return {{"level", s.level == Level::Caution ? "caution" : "consider"}, {"urgency", urgency}};
}

Critique critique_from_json(const json& j, const std::string& path) {
  Critique c;
  c.id = CritiqueId(str_field(j, "id", path));
  const json& oi = field(j, "order_index", path);
  if (!oi.is_number_unsigned() && !(oi.is_number_integer() && oi.get<long long>() >= 0))
    throw CaseParseError(at(path, "order_index"), "expected a non-negative integer");
  c.order_index = oi.get<std::uint32_t>();

  const std::string kind = str_field(j, "kind", path);
  if (kind == "omitted_actions") {
    OmittedActions o;
    o.severity = severity_from_json(field(j, "severity", path), at(path, "severity"));
    const json& steps = field(j, "steps", path);
    if (!steps.is_array()) throw CaseParseError(at(path, "steps"), "expected an array");
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const std::string sp = at(at(path, "steps"), i);
      Step s{ActionId(str_field(steps[i], "action", sp)),
             id_list<GoalId>(field(steps[i], "goals", sp), at(sp, "goals"))};
      o.steps.push_back(std::move(s));
    }
    o.partial_goals = optional_ids<GoalId>(j, "partial_goals", path);
    c.kind = std::move(o);
  } else if (kind == "schedule_priority") {
    c.kind = SchedulePriority{id_list<ActionId>(field(j, "do_first", path), at(path, "do_first")),
                              ActionId(str_field(j, "before", path))};
  } else if (kind == "precondition_reminder") {
    c.kind = PreconditionReminder{ActionId(str_field(j, "precondition", path)),
                                  ActionId(str_field(j, "before", path))};
  } else if (kind == "postpone_dependent") {
    c.kind = PostponeDependent{ActionId(str_field(j, "postponed", path)),
                               ActionId(str_field(j, "depends_on", path))};
  } else if (kind == "preferred_alternative") {
    c.kind = PreferredAlternative{ActionId(str_field(j, "preferred", path)),
                                  ActionId(str_field(j, "dispreferred", path)),
                                  GoalId(str_field(j, "purpose", path))};
  } else {
    throw CaseParseError(at(path, "kind"), "unknown critique kind \"" + kind + "\"");
  }
  return c;
}

json critique_to_json(const Critique& c) {
  json j{{"id", c.id.value}, {"order_index", c.order_index}, {"kind", kind_name(c.kind)}};
  if (auto* o = c.as<OmittedActions>()) {
    j["severity"] = severity_to_json(o->severity);
    json steps = json::array();
    for (const auto& s : o->steps) steps.push_back({{"action", s.action.value}, {"goals", ids_to_json(s.goals)}});
    j["steps"] = steps;
    if (!o->partial_goals.empty()) j["partial_goals"] = ids_to_json(o->partial_goals);
  } else if (auto* p = c.as<SchedulePriority>()) {
    j["do_first"] = ids_to_json(p->do_first);
    j["before"] = p->before.value;
  } else if (auto* r = c.as<PreconditionReminder>()) {
    j["precondition"] = r->precondition.value;
    j["before"] = r->before.value;
  } else if (auto* d = c.as<PostponeDependent>()) {
    j["postponed"] = d->postponed.value;
    j["depends_on"] = d->depends_on.value;
  } else if (auto* a = c.as<PreferredAlternative>()) {
    j["preferred"] = a->preferred.value;
    j["dispreferred"] = a->dispreferred.value;
    j["purpose"] = a->purpose.value;
  }
  return j;
}

json read_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw CaseParseError(file.string(), "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw CaseParseError(file.string(), e.what());
  }
}

}  // namespace

DiscourseState state_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw CaseParseError(path, "expected an object");
  DiscourseState s;
  s.focus_stack = optional_ids<ActionId>(j, "focus_stack", path);
  s.shared_knowledge = optional_ids<ActionId>(j, "shared_knowledge", path);
  s.conflicted = optional_ids<ActionId>(j, "conflicted", path);
  for (auto* v : {&s.shared_knowledge, &s.conflicted}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  return s;
}

json state_to_json(const DiscourseState& s) {
  return {{"focus_stack", ids_to_json(s.focus_stack)},
          {"shared_knowledge", ids_to_json(s.shared_knowledge)},
          {"conflicted", ids_to_json(s.conflicted)}};
}

CaseBundle bundle_from_json(const json& j) {
  const std::string root;
  if (!j.is_object()) throw CaseParseError("(root)", "expected an object");
  CaseBundle b;

  const json& lex = field(j, "lexicon", root);
  if (!lex.is_object()) throw CaseParseError("lexicon", "expected an object");
  for (const auto& [key, e] : lex.items()) {
    const std::string p = at("lexicon", key);
    LexiconEntry entry{normalize_slot(str_field(e, "imperative", p)),
                       normalize_slot(str_field(e, "gerund", p)), false};
    if (e.contains("has_article")) {
      if (!e["has_article"].is_boolean()) throw CaseParseError(at(p, "has_article"), "expected a boolean");
      entry.has_article = e["has_article"].get<bool>();
    } else {
      entry.has_article = entry.imperative.find(kArticleSlot) != std::string::npos;
    }
    b.lexicon.entries.emplace(key, std::move(entry));
  }

  if (j.contains("goals")) {
    const json& goals = j["goals"];
    if (!goals.is_array()) throw CaseParseError("goals", "expected an array");
    for (std::size_t i = 0; i < goals.size(); ++i) {
      const std::string p = at("goals", i);
      GoalDef g{GoalId(str_field(goals[i], "id", p)), str_field(goals[i], "gerund", p),
                str_field(goals[i], "infinitive", p)};
      if (b.lexicon.goals.contains(g.id)) throw CaseParseError(at(p, "id"), "duplicate goal id");
      b.lexicon.goals.emplace(g.id, std::move(g));
    }
  }

  if (j.contains("actions")) {
    const json& acts = j["actions"];
    if (!acts.is_object()) throw CaseParseError("actions", "expected an object");
    for (const auto& [id, key] : acts.items())
      b.lexicon.action_keys.emplace(ActionId(id), str(key, at("actions", id)));
  }

  if (j.contains("critiques")) {
    const json& cs = j["critiques"];
    if (!cs.is_array()) throw CaseParseError("critiques", "expected an array");
    for (std::size_t i = 0; i < cs.size(); ++i)
      b.critiques.push_back(critique_from_json(cs[i], at("critiques", i)));
  }

  b.cbmr = optional_ids<ActionId>(j, "cbmr", "");
  if (j.contains("state")) b.prior_state = state_from_json(j["state"]);
  if (j.contains("options")) {
    const json& o = j["options"];
    if (!o.is_object()) throw CaseParseError("options", "expected an object");
    if (o.contains("severity_labels")) {
      if (!o["severity_labels"].is_boolean())
        throw CaseParseError("options.severity_labels", "expected a boolean");
      b.options.severity_labels = o["severity_labels"].get<bool>();
    }
  }
  return b;
}

json bundle_to_json(const CaseBundle& b) {
  json lex = json::object();
  for (const auto& [key, e] : b.lexicon.entries)
    lex[key] = {{"imperative", e.imperative}, {"gerund", e.gerund}, {"has_article", e.has_article}};
  json goals = json::array();
  for (const auto& [id, g] : b.lexicon.goals)
    goals.push_back({{"id", id.value}, {"gerund", g.gerund}, {"infinitive", g.infinitive}});
  json critiques = json::array();
  for (const auto& c : b.critiques) critiques.push_back(critique_to_json(c));

  json j{{"lexicon", lex}, {"goals", goals}, {"critiques", critiques}, {"cbmr", ids_to_json(b.cbmr)}};
  if (!b.lexicon.action_keys.empty()) {
    json acts = json::object();
    for (const auto& [id, key] : b.lexicon.action_keys) acts[id.value] = key;
    j["actions"] = acts;
  }
  if (b.prior_state) j["state"] = state_to_json(*b.prior_state);
  j["options"] = {{"severity_labels", b.options.severity_labels}};
  return j;
}

json report_to_json(const MetricsReport& r) {
  return {{"message_count_before", r.message_count_before},
          {"message_count_after", r.message_count_after},
          {"np_count_before", r.np_count_before},
          {"np_count_after", r.np_count_after},
          {"focus_shifts_before", r.focus_shifts_before},
          {"focus_shifts_after", r.focus_shifts_after},
          {"rules_fired", r.rules_fired}};
}

CaseBundle load_bundle(const std::filesystem::path& file) { return bundle_from_json(read_json(file)); }

DiscourseState load_state(const std::filesystem::path& file) {
  return state_from_json(read_json(file), file.string());
}

void save_state(const std::filesystem::path& file, const DiscourseState& state) {
  std::ofstream out(file);
  if (!out) throw CaseParseError(file.string(), "cannot write file");
  out << state_to_json(state).dump(2) << '\n';
}

}  // namespace msgplan
