#include <gtest/gtest.h>

#include "msgplan/discourse.hpp"
#include "support.hpp"

using namespace msgplan;
using namespace msgplan::testing;

namespace {

Lexicon lexicon() {
  Lexicon lex;
  lex.entries["lavage"] = {"do <art> peritoneal lavage", "doing <art> peritoneal lavage", true};
  lex.entries["scars"] = {"check for laparotomy scars", "checking for laparotomy scars", false};
  return lex;
}

}  // namespace

TEST(Articles, NoSlotMeansNoArticle) {
  EXPECT_EQ(choose_article({}, A("scars"), lexicon()), Article::None);
}

TEST(Articles, UnsharedIsIndefiniteSharedIsDefinite) {
  EXPECT_EQ(choose_article({}, A("lavage"), lexicon()), Article::Indefinite);
  const std::vector<ActionId> cbmr{A("lavage")};
  const auto s = ingest_cbmr({}, cbmr);
  EXPECT_EQ(choose_article(s, A("lavage"), lexicon()), Article::Definite);
}

TEST(Articles, ConflictedIsIndefiniteEvenWhenShared) {
  const std::vector<ActionId> lav{A("lavage")};
  const auto s = mark_conflicted(ingest_cbmr({}, lav), lav);
  EXPECT_TRUE(s.is_shared(A("lavage")));
  EXPECT_EQ(choose_article(s, A("lavage"), lexicon()), Article::Indefinite);
}

TEST(Ingest, IdempotentAndSettlesDisputes) {
  const std::vector<ActionId> cbmr{A("b"), A("a")};
  const auto once = ingest_cbmr({}, cbmr);
  EXPECT_EQ(ingest_cbmr(once, cbmr), once);
  EXPECT_EQ(once.shared_knowledge, (std::vector<ActionId>{A("a"), A("b")}));
  const std::vector<ActionId> a{A("a")};
  const auto disputed = mark_conflicted(once, a);
  EXPECT_FALSE(ingest_cbmr(disputed, a).is_conflicted(A("a")));
}

TEST(Mentions, MoveToTopWithoutDuplicates) {
  auto s = note_mention({}, A("a"));
  s = note_mention(s, A("b"));
  s = note_mention(s, A("a"));
  EXPECT_EQ(s.focus_stack, (std::vector<ActionId>{A("b"), A("a")}));
  EXPECT_EQ(s.top(), A("a"));
  EXPECT_TRUE(s.is_shared(A("b")));
}

TEST(Mentions, DisputedActionDoesNotBecomeShared) {
  const std::vector<ActionId> a{A("a")};
  const auto s = note_mention(mark_conflicted({}, a), A("a"));
  EXPECT_FALSE(s.is_shared(A("a")));
  EXPECT_EQ(s.top(), A("a"));
}

TEST(Mentions, UpdateAfterMessageAppliesConflictsFirst) {
  const std::vector<ActionId> mentions{A("a"), A("b")};
  const std::vector<ActionId> conflicted{A("b")};
  const auto s = update_after_message({}, mentions, conflicted);
  EXPECT_TRUE(s.is_shared(A("a")));
  EXPECT_FALSE(s.is_shared(A("b")));
  EXPECT_EQ(s.top(), A("b"));
  EXPECT_EQ(update_after_message({}, mentions), note_mention(note_mention({}, A("a")), A("b")));
}

TEST(ClauseOrder, MainFirstOnlyWhenAllPrecedingInSegment) {
  const Schedule s{{A("tube"), A("xray")}, A("lavage"), ScheduleReason::Priority};
  const std::vector<ActionId> both{A("allergies"), A("tube"), A("xray")};
  const std::vector<ActionId> one{A("tube")};
  EXPECT_EQ(clause_order(s, both), ClauseOrder::MainFirst);
  EXPECT_EQ(clause_order(s, one), ClauseOrder::SubordinateFirst);
  EXPECT_EQ(clause_order(s, {}), ClauseOrder::SubordinateFirst);
}
