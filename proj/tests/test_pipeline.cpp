#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <unistd.h>

#include "msgplan/case_io.hpp"
#include "msgplan/discourse.hpp"
#include "msgplan/pipeline.hpp"
#include "support.hpp"

using namespace msgplan;
using namespace msgplan::testing;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::vector<std::string> kFixtures{"merged_trailing",  "schematic",        "revise_conflict",
                                         "revise_interactions", "focus_standalone", "focus_in_context",
                                         "reference_definite", "reference_indefinite"};

std::vector<std::string> normalized(const std::vector<std::string>& v) {
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(normalize(s));
  return out;
}

class Golden : public ::testing::TestWithParam<std::string> {};

}  // namespace

TEST_P(Golden, PlannedTextMatches) {
  const auto bundle = load_bundle(fixture(GetParam() + ".json"));
  const auto r = run_case(bundle);
  EXPECT_EQ(normalized(r.texts()), expected_messages(fixture(GetParam() + ".expected.txt")));
}

TEST_P(Golden, FidelityAndMonotoneMetrics) {
  const auto bundle = load_bundle(fixture(GetParam() + ".json"));
  const auto plan = plan_case(bundle);
  auto in = input_pairs(bundle);
  EXPECT_EQ(in, output_pairs(plan.messages));
  const auto r = run_case(bundle);
  EXPECT_LE(r.report.message_count_after, r.report.message_count_before);
  EXPECT_LE(r.report.np_count_after, r.report.np_count_before);
}

INSTANTIATE_TEST_SUITE_P(Fixtures, Golden, ::testing::ValuesIn(kFixtures));

TEST(Baseline, OneMessagePerCritiqueAsOriginallyShown) {
  for (const std::string name : {"merged_trailing", "schematic", "revise_conflict", "revise_interactions"}) {
    const auto r = run_case(load_bundle(fixture(name + ".json")));
    std::vector<std::string> got;
    for (const auto& m : r.baseline) got.push_back(normalize(m.text()));
    EXPECT_EQ(got, expected_messages(fixture(name + ".baseline.txt"))) << name;
  }
}

TEST(Rules, EachFixtureFiresExactlyItsRules) {
  const std::vector<std::pair<std::string, std::vector<std::string>>> want{
      {"merged_trailing", {kRuleCombine, kRuleTrailing}},
      {"schematic", {kRuleCombine}},
      {"revise_conflict", {"Revise-Conflict"}},
      {"revise_interactions", {"Revise-Interactions"}},
      {"focus_in_context", {kRuleAttach}},
      {"focus_standalone", {}},
      {"reference_definite", {}},
      {"reference_indefinite", {}}};
  for (const auto& [name, rules] : want)
    EXPECT_EQ(run_case(load_bundle(fixture(name + ".json"))).report.rules_fired, rules) << name;
}

TEST(Metrics, WorkedCaseCounts) {
  const auto r = run_case(load_bundle(fixture("merged_trailing.json")));
  EXPECT_EQ(r.report.message_count_before, 5);
  EXPECT_EQ(r.report.message_count_after, 1);
  EXPECT_EQ(r.report.np_count_before, 14);
  EXPECT_EQ(r.report.np_count_after, 13);
  EXPECT_LT(r.report.focus_shifts_after, r.report.focus_shifts_before);
}

TEST(Metrics, ReportsAdd) {
  MetricsReport a{1, 1, 2, 2, 0, 1, {"x"}};
  const MetricsReport b{2, 1, 3, 2, 1, 0, {"y"}};
  a += b;
  EXPECT_EQ(a.message_count_before, 3);
  EXPECT_EQ(a.np_count_after, 4);
  EXPECT_EQ(a.focus_shifts_before, 1);
  EXPECT_EQ(a.rules_fired, (std::vector<std::string>{"x", "y"}));
}

TEST(Pipeline, EmptyBundleHasNoMessages) {
  CaseBundle b;
  const auto r = run_case(b);
  EXPECT_TRUE(r.messages.empty());
  EXPECT_EQ(r.report.message_count_before, 0);
}

TEST(Pipeline, InvalidBundleThrowsWithViolations) {
  CaseBundle b;
  b.critiques.push_back(omitted("c", 1, {{"nope", {"g"}}}));
  try {
    run_case(b);
    FAIL() << "expected BundleError";
  } catch (const BundleError& e) {
    EXPECT_FALSE(e.violations.empty());
  }
}

TEST(Pipeline, PostCbmrStateIsTheStart) {
  const auto bundle = load_bundle(fixture("reference_definite.json"));
  EXPECT_TRUE(plan_case(bundle).start.is_shared(A("lavage")));
}

TEST(Pipeline, StateAfterMatchesThreadedUpdate) {
  const auto bundle = load_bundle(fixture("merged_trailing.json"));
  const auto r = run_case(bundle);
  DiscourseState expected = plan_case(bundle).start;
  for (const auto& m : r.messages)
    expected = update_after_message(expected, m.realized.mentions(), m.planned.conflicted);
  EXPECT_EQ(r.state, expected);
}

TEST(Pipeline, SeverityLabelsCanBeSuppressed) {
  auto bundle = load_bundle(fixture("merged_trailing.json"));
  bundle.options.severity_labels = false;
  const auto text = run_case(bundle).texts().front();
  EXPECT_EQ(text.rfind("Check for medication allergies", 0), 0u) << text;
}

TEST(Pipeline, DisputedPostponeUsesSinceForm) {
  const auto r = run_case(load_bundle(fixture("reference_indefinite.json")));
  EXPECT_TRUE(r.state.is_conflicted(A("lavage")));
  EXPECT_EQ(r.messages[0].planned.conflicted, std::vector<ActionId>{A("lavage")});
}

TEST(Pipeline, RunsAreDeterministic) {
  for (const auto& name : kFixtures) {
    const auto bundle = load_bundle(fixture(name + ".json"));
    EXPECT_EQ(run_case(bundle).texts(), run_case(bundle).texts()) << name;
  }
}

TEST(CaseIo, RoundTripsEveryFixture) {
  for (const auto& name : kFixtures) {
    const auto bundle = load_bundle(fixture(name + ".json"));
    EXPECT_EQ(bundle_from_json(bundle_to_json(bundle)), bundle) << name;
  }
}

TEST(CaseIo, ArticleSlotSpellingsAreEquivalent) {
  json j = json::parse(read_file(fixture("reference_definite.json")));
  j["lexicon"]["lavage"]["imperative"] = "do ⟨art⟩ peritoneal lavage";
  j["lexicon"]["lavage"].erase("has_article");
  const auto b = bundle_from_json(j);
  EXPECT_EQ(b.lexicon.entries.at("lavage").imperative, "do <art> peritoneal lavage");
  EXPECT_TRUE(b.lexicon.entries.at("lavage").has_article);
}

TEST(CaseIo, ParseErrorsCarryPaths) {
  const json base = json::parse(read_file(fixture("merged_trailing.json")));
  auto expect_path = [&](json j, const std::string& path) {
    try {
      bundle_from_json(j);
      ADD_FAILURE() << "expected CaseParseError at " << path;
    } catch (const CaseParseError& e) {
      EXPECT_EQ(e.path, path);
    }
  };
  json j = base;
  j.erase("lexicon");
  expect_path(j, "lexicon");
  j = base;
  j["critiques"][1]["kind"] = "bogus";
  expect_path(j, "critiques[1].kind");
  j = base;
  j["critiques"][0]["severity"]["level"] = "panic";
  expect_path(j, "critiques[0].severity.level");
  j = base;
  j["critiques"][0]["order_index"] = -1;
  expect_path(j, "critiques[0].order_index");
  expect_path(json::array(), "(root)");
}

TEST(CaseIo, MissingFileIsParseError) {
  EXPECT_THROW(load_bundle(fixture("does-not-exist.json")), CaseParseError);
}

TEST(CaseIo, StatePersistsAcrossTurns) {
  const auto dir = fs::temp_directory_path() / ("msgplan-state-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto file = dir / "state.json";
  auto bundle = load_bundle(fixture("merged_trailing.json"));
  const auto first = run_case(bundle);
  save_state(file, first.state);
  EXPECT_EQ(load_state(file), first.state);
  EXPECT_EQ(state_from_json(state_to_json(first.state)), first.state);

  // A second turn sees the laparotomy as already introduced.
  CaseBundle next = load_bundle(fixture("reference_indefinite.json"));
  next.lexicon = bundle.lexicon;
  next.lexicon.entries["lavage"] = {"do <art> peritoneal lavage", "doing <art> peritoneal lavage", true};
  next.lexicon.entries["chest_xray"] = {"get <art> chest x-ray", "getting <art> chest x-ray", true};
  next.prior_state = load_state(file);
  const auto second = run_case(next);
  EXPECT_TRUE(second.state.is_shared(A("laparotomy")));
  fs::remove_all(dir);
}

TEST(CaseIo, ReportJsonHasEveryField) {
  const auto j = report_to_json(run_case(load_bundle(fixture("schematic.json"))).report);
  for (const char* k : {"message_count_before", "message_count_after", "np_count_before",
                        "np_count_after", "focus_shifts_before", "focus_shifts_after", "rules_fired"})
    EXPECT_TRUE(j.contains(k)) << k;
}
