#include <gtest/gtest.h>

#include "msgplan/revision.hpp"
#include "support.hpp"

using namespace msgplan;
using namespace msgplan::testing;

namespace {

const Critique kPrefer{C("pref"), PreferredAlternative{A("explore"), A("lavage"), G("wall")}, 1};
const Critique kRemind{C("remind"), PreconditionReminder{A("scars"), A("lavage")}, 2};
const Critique kPostpone{C("post"), PostponeDependent{A("reassess"), A("lavage")}, 4};

Critique execute(std::uint32_t order = 3) {
  return omitted("exec", order, {{"lavage", {"bleed"}}}, {Level::Caution, Urgency::Immediately},
                 {"bleed"});
}

}  // namespace

TEST(RuleNames, Exact) {
  EXPECT_EQ(rule_name(TriggerKind::Conflict), "Revise-Conflict");
  EXPECT_EQ(rule_name(TriggerKind::Interaction), "Revise-Interactions");
}

TEST(ScheduledAction, PerKind) {
  EXPECT_EQ(scheduled_action(kRemind), A("lavage"));
  EXPECT_EQ(scheduled_action(kPostpone), A("reassess"));
  EXPECT_FALSE(scheduled_action(kPrefer));
  EXPECT_FALSE(scheduled_action(execute()));
}

TEST(Triggers, ConflictOnDispreferredAction) {
  const std::vector<Critique> cs{kPrefer, kRemind};
  const auto t = detect_triggers(cs);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0], (RevisionTrigger{TriggerKind::Conflict, C("pref"), C("remind"), A("lavage")}));
}

TEST(Triggers, InteractionOnRecommendedDependency) {
  const std::vector<Critique> cs{execute(), kPostpone};
  const auto t = detect_triggers(cs);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0], (RevisionTrigger{TriggerKind::Interaction, C("post"), C("exec"), A("lavage")}));
}

TEST(Triggers, InputOrderDoesNotMatter) {
  const std::vector<Critique> a{kPrefer, kRemind, execute(), kPostpone};
  const std::vector<Critique> b{kPostpone, execute(), kRemind, kPrefer};
  EXPECT_EQ(detect_triggers(a), detect_triggers(b));
  EXPECT_EQ(detect_triggers(a).size(), 2u);
}

TEST(Triggers, EachCritiqueClaimedOnce) {
  const Critique remind2{C("remind2"), PreconditionReminder{A("xray"), A("lavage")}, 5};
  const std::vector<Critique> cs{kPrefer, kRemind, remind2};
  const auto t = detect_triggers(cs);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].secondary_id, C("remind"));
}

TEST(Triggers, UnrelatedPairsDoNotFire) {
  const Critique other{C("o"), PreconditionReminder{A("scars"), A("xray")}, 2};
  const std::vector<Critique> cs{kPrefer, other, omitted("e", 3, {{"xray", {"g"}}})};
  EXPECT_TRUE(detect_triggers(cs).empty());
}

TEST(ReviseConflict, ConcessionOverConditionalSchedule) {
  const auto r = revise_conflict(kPrefer, kRemind);
  EXPECT_EQ(r.conflicted, std::vector<ActionId>{A("lavage")});
  EXPECT_TRUE(check_plan(r.plan).empty());
  EXPECT_EQ(dump_plan(r.plan),
            "CONCESSION\n"
            "  PREFER explore over lavage for wall\n"
            "  CONDITION\n"
            "    SCHEDULE reminder [scars] before lavage\n"
            "    ASSUME lavage\n");
}

TEST(ReviseConflict, SymmetricInArguments) {
  EXPECT_EQ(revise_conflict(kPrefer, kRemind).plan, revise_conflict(kRemind, kPrefer).plan);
}

TEST(ReviseConflict, InvalidPairsThrow) {
  EXPECT_THROW(revise_conflict(kPrefer, kPostpone), RevisionError);  // schedules reassess
  EXPECT_THROW(revise_conflict(kRemind, kRemind), RevisionError);
  EXPECT_THROW(revise_conflict(kPrefer, execute()), RevisionError);
}

TEST(ReviseInteractions, SequenceThenDecide) {
  const auto r = revise_interactions(execute(), kPostpone);
  EXPECT_TRUE(r.conflicted.empty());
  EXPECT_TRUE(check_plan(r.plan).empty());
  const auto* seq = r.plan.root.relation();
  ASSERT_NE(seq, nullptr);
  EXPECT_EQ(seq->relation, RelationKind::Sequence);
  ASSERT_EQ(seq->children.size(), 2u);
  const auto seg = unpack_segment(seq->children[0]);
  ASSERT_NE(seg.recommend, nullptr);
  EXPECT_FALSE(seg.recommend->show_level);
  EXPECT_TRUE(seg.recommend->show_urgency);
  EXPECT_EQ(*seq->children[1].act_as<Decide>(), (Decide{A("lavage"), A("reassess")}));
}

TEST(ReviseInteractions, SymmetricAndValidated) {
  EXPECT_EQ(revise_interactions(execute(), kPostpone).plan, revise_interactions(kPostpone, execute()).plan);
  EXPECT_THROW(revise_interactions(kPostpone, omitted("e", 3, {{"xray", {"g"}}})), RevisionError);
  EXPECT_THROW(revise_interactions(kPrefer, kRemind), RevisionError);
}
