#include <gtest/gtest.h>

#include <memory>

#include "evolab/adversaries.hpp"
#include "evolab/catalog.hpp"
#include "evolab/dimensions.hpp"
#include "evolab/game.hpp"
#include "evolab/learners.hpp"

namespace evolab {
namespace {

TEST(TreeWalk, ForcesTheWitnessBranchingAdaptively) {
  EnumeratedFamily family = bool_mod2(2);
  DimensionEngine engine(family);
  GameContext<State> ctx = enumerated_context(family);
  TrajectoryTree witness = engine.witness(2);

  auto shared_engine = std::make_shared<DimensionEngine>(family);
  Alg1Session alg1(shared_engine);
  TreeAdversaryDeterministic walk(family, witness);
  EXPECT_FALSE(walk.oblivious());
  GameReport report = run_game(alg1, walk, 2, 0, 0, ctx);
  EXPECT_GE(report.mistakes, 2);
  EXPECT_TRUE(report.realizable.value());

  PreviousStateLearner<State> previous;
  TreeAdversaryDeterministic walk_again(family, witness);
  EXPECT_GE(run_game(previous, walk_again, 2, 0, 0, ctx).mistakes, 2);
}

TEST(TreeWalk, RejectsUnshatteredWitnesses) {
  EnumeratedFamily constant(StateSpace({"a", "b"}), {{0, 0}}, {"const_a"}, "single");
  TrajectoryTree split{1, {0, 0, 1}};
  EXPECT_THROW(TreeAdversaryDeterministic(constant, split), SpecError);
}

TEST(TreePath, PlaysARealizablePathObliviously) {
  EnumeratedFamily family = bool_threshold(2);
  DimensionEngine engine(family);
  GameContext<State> ctx = enumerated_context(family);
  TrajectoryTree witness = engine.witness(3);
  TreeAdversaryRandomPath path(family, witness);
  EXPECT_TRUE(path.oblivious());

  auto run = [&] {
    FixedMemberLearner learner(family, 0);
    TreeAdversaryRandomPath adversary(family, witness);
    return run_game(learner, adversary, 3, 0, 21, ctx);
  };
  GameReport report = run();
  EXPECT_TRUE(report.realizable.value());
  EXPECT_EQ(report.to_json().dump(), run().to_json().dump());
}

TEST(BooleanForcing, DefeatsEveryLearnerInNRounds) {
  for (auto kind : {BooleanForcingAdversary::Kind::mod2, BooleanForcingAdversary::Kind::threshold}) {
    EnumeratedFamily family =
        kind == BooleanForcingAdversary::Kind::mod2 ? bool_mod2(2) : bool_threshold(2);
    GameContext<State> ctx = enumerated_context(family);
    auto engine = std::make_shared<DimensionEngine>(family);

    Alg1Session alg1(engine);
    BooleanForcingAdversary versus_alg1(2, kind);
    GameReport report = run_game(alg1, versus_alg1, 2, 0, 0, ctx);
    EXPECT_EQ(report.mistakes, 2);
    EXPECT_TRUE(report.realizable.value());

    PreviousStateLearner<State> previous;
    BooleanForcingAdversary versus_previous(2, kind);
    EXPECT_EQ(run_game(previous, versus_previous, 2, 0, 0, ctx).mistakes, 2);
  }
  EXPECT_THROW(BooleanForcingAdversary(4, BooleanForcingAdversary::Kind::mod2), SpecError);
}

TEST(LittlestoneBlocks, DemandTheBlockHorizonAndAValidTree) {
  EnumeratedFamily family = bool_mod2(2);
  DimensionEngine engine(family);
  GameContext<State> ctx = enumerated_context(family);
  LittlestoneTree witness = engine.littlestone_witness();
  ASSERT_EQ(witness.depth, 2);

  // Blocks of three tree levels each: r = ceil(depth / 3) rounds of play.
  int r = (witness.depth + 2) / 3;
  PreviousStateLearner<State> learner;
  LittlestoneBlockAdversary blocks(family, witness);
  GameReport report = run_game(learner, blocks, 2 * r - 1, 0, 5, ctx);
  EXPECT_EQ(report.horizon, 2 * r - 1);

  LittlestoneBlockAdversary wrong_horizon(family, witness);
  EXPECT_THROW(run_game(learner, wrong_horizon, 2 * r, 0, 5, ctx), SpecError);

  LittlestoneTree flat = witness;
  std::fill(flat.edge_labels.begin(), flat.edge_labels.end(), State{0});
  EXPECT_THROW(LittlestoneBlockAdversary(family, flat), SpecError);

  LittlestoneTree truncated = witness;
  truncated.instances.pop_back();
  EXPECT_THROW(LittlestoneBlockAdversary(family, truncated), SpecError);
}

TEST(TwoFunction, NeedsTwoDistinctDisagreeingMembers) {
  EnumeratedFamily family = threshold_pair();
  EXPECT_THROW(TwoFunctionAdversary(family, 0, 0), SpecError);
  EXPECT_THROW(TwoFunctionAdversary(family, 0, 5), SpecError);

  EnumeratedFamily twins(StateSpace({"a", "b"}), {{0, 0}, {0, 0}}, {"f", "g"}, "twins");
  EXPECT_THROW(TwoFunctionAdversary(twins, 0, 1), SpecError);

  GameContext<State> ctx = enumerated_context(family);
  PreviousStateLearner<State> learner;
  TwoFunctionAdversary adversary(family, 0, 1);
  EXPECT_TRUE(adversary.oblivious());
  GameReport report = run_game(learner, adversary, 8, 0, 3, ctx);
  EXPECT_GE(report.mistakes, 0);
  EXPECT_LE(report.mistakes, 8);
}

TEST(MarkovianTightness, PlaysExactlyTwoKDMinusOneRounds) {
  EXPECT_THROW(MarkovianTightnessAdversary(0, 3), SpecError);
  EXPECT_THROW(MarkovianTightnessAdversary(2, 4), SpecError);

  EnumeratedFamily family = markovian_tightness(2);
  GameContext<State> ctx = enumerated_context(family);
  PreviousStateLearner<State> learner;
  MarkovianTightnessAdversary adversary(2, 3);
  GameReport report = run_game(learner, adversary, 2 * 3 * 2 - 1, 0, 13, ctx);
  EXPECT_EQ(report.horizon, 11);

  MarkovianTightnessAdversary wrong_horizon(2, 3);
  EXPECT_THROW(run_game(learner, wrong_horizon, 10, 0, 13, ctx), SpecError);
}

TEST(SwitchingTightness, PlaysKPPlusOneRoundsInsideTheWindow) {
  EXPECT_THROW(SwitchingTightnessAdversary(1, 2, 18), SpecError);
  EXPECT_THROW(SwitchingTightnessAdversary(-1, 3, 18), SpecError);

  EnumeratedFamily family = switching_family(1, 18);
  GameContext<State> ctx = enumerated_context(family);
  PreviousStateLearner<State> learner;
  SwitchingTightnessAdversary adversary(1, 3, 18);
  GameReport report = run_game(learner, adversary, 6, 0, 17, ctx);
  EXPECT_EQ(report.horizon, 6);

  SwitchingTightnessAdversary wrong_horizon(1, 3, 18);
  EXPECT_THROW(run_game(learner, wrong_horizon, 5, 0, 17, ctx), SpecError);

  SwitchingTightnessAdversary beyond_window(1, 9, 8);
  EXPECT_THROW(run_game(learner, beyond_window, 18, 0, 17, ctx), SpecError);
}

}  // namespace
}  // namespace evolab
