#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "evolab/errors.hpp"
#include "evolab/learners.hpp"
#include "evolab/rng.hpp"
#include "evolab/separation_world.hpp"

namespace evolab {
namespace {

std::vector<SepState> random_stream(const SeparationWorld& world, int T, Rng& rng) {
  std::vector<SepState> stream;
  stream.push_back(SepState{static_cast<std::uint64_t>(rng.uniform_int(
                                0, static_cast<std::int64_t>(world.all_plus()))),
                            0});
  for (int t = 1; t <= T; ++t) {
    if (rng.coin()) {
      auto member = static_cast<std::uint64_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(world.member_count()) - 1));
      stream.push_back(world.apply(member, stream.back()));
    } else {
      SepState s;
      s.theta = static_cast<std::uint64_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(world.all_plus())));
      s.z = rng.uniform_int(-t, t);
      stream.push_back(s);
    }
  }
  return stream;
}

TEST(SeparationWorld, ShapeLabelsAndParsing) {
  SeparationWorld world(3, 50);
  EXPECT_EQ(world.member_count(), 8u);
  EXPECT_EQ(world.all_plus(), 7u);

  SepState s{0b101, -4};
  EXPECT_EQ(world.label(s), "+-+;-4");
  EXPECT_EQ(world.parse(world.label(s)), s);
  EXPECT_THROW(world.parse("+-;0"), IoError);
  EXPECT_THROW(world.parse("+-*;0"), IoError);
  EXPECT_THROW(world.parse("+-+;x"), IoError);
  EXPECT_THROW(world.parse("+-+;99"), IoError);

  EXPECT_THROW(SeparationWorld(0, 50), SpecError);
  EXPECT_THROW(SeparationWorld(61, 50), SpecError);
  EXPECT_THROW(SeparationWorld(3, 0), SpecError);
}

TEST(SeparationWorld, CyclicIndexWrapsMagnitudes) {
  SeparationWorld world(3, 50);
  EXPECT_EQ(world.cyclic_index(1), 1);
  EXPECT_EQ(world.cyclic_index(3), 3);
  EXPECT_EQ(world.cyclic_index(4), 1);
}

TEST(SeparationWorld, ApplyGrowsMagnitudeAndRevealsOnMultiplesOfThree) {
  SeparationWorld world(3, 50);
  SepState start{world.all_plus(), 0};

  SepState plus = world.apply(world.all_plus(), start);
  EXPECT_EQ(plus.z, 1);
  EXPECT_EQ(plus.theta, world.all_plus());

  SepState minus = world.apply(0, start);
  EXPECT_EQ(minus.z, -1);

  // The sign mask is exposed exactly when the new magnitude is a multiple
  // of three.
  SepState at_two{world.all_plus(), 2};
  SepState revealed = world.apply(5, at_two);
  EXPECT_EQ(revealed.z, 3);
  EXPECT_EQ(revealed.theta, 5u);

  SepState absorbed{world.all_plus(), 50};
  EXPECT_EQ(world.apply(0, absorbed), absorbed);

  EXPECT_THROW(world.markovian_comparator({SepState{world.all_plus(), 51}}), SpecError);
}

TEST(SeparationWorld, ComparatorsMatchExhaustiveMemberSimulation) {
  SeparationWorld world(3, 40);
  Rng rng(0x5E9A);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<SepState> stream = random_stream(world, 6, rng);

    long long best_markovian = 7, best_flow = 7;
    std::size_t matching = 0;
    for (std::uint64_t member = 0; member < world.member_count(); ++member) {
      best_markovian = std::min(best_markovian, world.markovian_loss(member, stream));
      best_flow = std::min(best_flow, world.flow_loss(member, stream));
      if (world.flow(member, stream[0], 6) == stream) ++matching;
    }

    EXPECT_EQ(world.markovian_comparator(stream).loss, best_markovian) << "trial " << trial;
    EXPECT_EQ(world.flow_comparator(stream).loss, best_flow) << "trial " << trial;
    RealizabilityOutcome outcome = world.realizability(stream);
    EXPECT_EQ(outcome.realizable, matching > 0) << "trial " << trial;
    EXPECT_EQ(outcome.witnesses, matching) << "trial " << trial;
  }
}

TEST(SeparationWorld, FlowComparatorNeedsCounterHeadroom) {
  SeparationWorld world(3, 5);
  std::vector<SepState> stream(7, SepState{world.all_plus(), 0});
  EXPECT_GE(world.markovian_comparator(stream).loss, 0);
  EXPECT_THROW(world.flow_comparator(stream), SpecError);
  EXPECT_THROW(world.flow_comparator({}), SpecError);
}

TEST(SeparationWorld, RealizableLearnerStaysWithinTheGuarantee) {
  SeparationWorld world(3, 12);
  GameContext<SepState> ctx = separation_context(world);
  long long worst = 0;
  for (std::uint64_t member = 0; member < world.member_count(); ++member) {
    SeparationRealizableSession learner(world);
    FixedStreamAdversary<SepState> adversary(world.flow(member, SepState{world.all_plus(), 0}, 9));
    GameReport report = run_game(learner, adversary, 9, 0, 0, ctx);
    EXPECT_TRUE(report.realizable.value()) << "member " << member;
    worst = std::max(worst, report.mistakes);
  }
  EXPECT_LE(worst, 3);
}

TEST(SeparationWorld, FlowAdversaryPlaysAnObliviousGame) {
  SeparationWorld world(3, 12);
  GameContext<SepState> ctx = separation_context(world);
  SeparationFlowAdversary adversary(world);
  EXPECT_TRUE(adversary.oblivious());
  PreviousStateLearner<SepState> learner;
  GameReport report = run_game(learner, adversary, 6, 0, 23, ctx);
  EXPECT_LE(report.mistakes, 6);
  ASSERT_TRUE(report.flow_regret.has_value());
}

}  // namespace
}  // namespace evolab
