#include <gtest/gtest.h>

#include <memory>

#include "evolab/adversaries.hpp"
#include "evolab/catalog.hpp"
#include "evolab/dimensions.hpp"
#include "evolab/game.hpp"
#include "evolab/learners.hpp"
#include "evolab/multiclass.hpp"

namespace evolab {
namespace {

EnumeratedFamily hand_family() {
  return EnumeratedFamily(StateSpace({"a", "b"}), {{0, 0}, {1, 1}, {1, 0}, {0, 1}},
                          {"const_a", "const_b", "swap", "identity"}, "hand");
}

std::uint64_t binomial(int n, int k) {
  std::uint64_t value = 1;
  for (int i = 1; i <= k; ++i) value = value * static_cast<std::uint64_t>(n - k + i) /
                                       static_cast<std::uint64_t>(i);
  return value;
}

TEST(Alg1, StaysWithinTheStartComplexityOnEveryRealizableRun) {
  EnumeratedFamily family = bool_mod2(2);
  auto engine = std::make_shared<DimensionEngine>(family);
  ExhaustiveResult result = exhaustive_realizable_suite(
      family, [&] { return std::make_unique<Alg1Session>(engine); }, 6);
  EXPECT_EQ(result.runs, 64u);
  EXPECT_LE(result.worst_mistakes, 2);
  EXPECT_TRUE(result.potentials_ok);
}

TEST(Alg1, TieBreakChoiceKeepsTheGuarantee) {
  EnumeratedFamily family = bool_threshold(2);
  auto engine = std::make_shared<DimensionEngine>(family);
  Alg1Options high;
  high.highest_tie_break = true;
  ExhaustiveResult result = exhaustive_realizable_suite(
      family, [&] { return std::make_unique<Alg1Session>(engine, high); }, 6);
  EXPECT_LE(result.worst_mistakes, 2);
  EXPECT_TRUE(result.potentials_ok);
}

TEST(Alg1, FullDomainArgmaxPredictsIdentically) {
  EnumeratedFamily family = bool_mod2(2);
  auto engine = std::make_shared<DimensionEngine>(family);
  GameContext<State> ctx = enumerated_context(family);
  Alg1Options full;
  full.full_domain_argmax = true;
  for (std::size_t f = 0; f < family.member_count(); f += 3) {
    FixedStreamAdversary<State> adversary_a(family.flow(f, 0, 4));
    FixedStreamAdversary<State> adversary_b(family.flow(f, 0, 4));
    Alg1Session narrow(engine);
    Alg1Session wide(engine, full);
    GameReport a = run_game(narrow, adversary_a, 4, 0, 0, ctx);
    GameReport b = run_game(wide, adversary_b, 4, 0, 0, ctx);
    ASSERT_EQ(a.rounds.size(), b.rounds.size());
    for (std::size_t t = 0; t < a.rounds.size(); ++t)
      EXPECT_EQ(a.rounds[t].prediction, b.rounds[t].prediction) << "member " << f;
  }
}

TEST(SoaReduction, StaysWithinTheLittlestoneDimension) {
  EnumeratedFamily family = bool_mod2(2);
  auto engine = std::make_shared<DimensionEngine>(family);
  ExhaustiveResult result = exhaustive_realizable_suite(
      family,
      [&] {
        return std::make_unique<MarkovReductionSession>(
            std::make_unique<SoaMulticlass>(engine), "soa");
      },
      6);
  EXPECT_EQ(result.runs, 64u);
  EXPECT_LE(result.worst_mistakes, engine->littlestone_dimension());
}

TEST(EwMarkovian, IsReproducibleGivenSeeds) {
  EnumeratedFamily family = bool_mod2(2);
  DimensionEngine engine(family);
  GameContext<State> ctx = enumerated_context(family);
  TrajectoryTree witness = engine.witness(3);
  auto run = [&] {
    EwMarkovianSession learner(family);
    TreeAdversaryRandomPath adversary(family, witness);
    return run_game(learner, adversary, 3, 7, 9, ctx).to_json().dump();
  };
  EwMarkovianSession learner(family);
  EXPECT_FALSE(learner.deterministic());
  EXPECT_EQ(run(), run());
  EXPECT_THROW(EwMarkovianSession(family, -1.0), SpecError);
}

TEST(FlowExperts, PoolSizeMatchesTheBinomialFormula) {
  for (auto [family, horizon] : {std::pair<EnumeratedFamily, int>{bool_mod2(1), 3},
                                 {bool_mod2(2), 4},
                                 {threshold_pair(), 6}}) {
    auto engine = std::make_shared<DimensionEngine>(family);
    FlowExpertsOracle oracle(engine, horizon);
    std::uint64_t expected = 0;
    for (int i = 0; i <= oracle.complexity_bound(); ++i) {
      std::uint64_t fanout_power = 1;
      for (int j = 0; j < i; ++j) fanout_power *= oracle.fanout();
      expected += binomial(horizon, i) * fanout_power;
    }
    EXPECT_EQ(oracle.expert_count(), expected) << family.name();
  }
  EnumeratedFamily smallest = bool_mod2(1);
  auto engine = std::make_shared<DimensionEngine>(smallest);
  EXPECT_EQ(FlowExpertsOracle(engine, 3).expert_count(), 7u);
}

TEST(FlowExperts, SomeExpertTracksEveryMemberFlow) {
  EnumeratedFamily family = bool_mod2(2);
  auto engine = std::make_shared<DimensionEngine>(family);
  FlowExpertsOracle oracle(engine, 5);
  for (std::size_t f = 0; f < family.member_count(); ++f)
    for (State x0 = 0; x0 < family.state_count(); ++x0)
      ASSERT_EQ(oracle.best_expert_loss(family.flow(f, x0, 5)), 0)
          << "member " << f << " from " << x0;
}

TEST(FlowExperts, RolloutsCoverTheHorizon) {
  EnumeratedFamily family = bool_mod2(1);
  auto engine = std::make_shared<DimensionEngine>(family);
  FlowExpertsOracle oracle(engine, 3);
  const auto& rollouts = oracle.rollouts(0);
  ASSERT_EQ(rollouts.size(), oracle.expert_count());
  for (const auto& rollout : rollouts) EXPECT_EQ(rollout.size(), 3u);
}

TEST(FlowExperts, RefusesPoolsBeyondTheBudget) {
  EnumeratedFamily family = bool_mod2(2);
  auto engine = std::make_shared<DimensionEngine>(family);
  EXPECT_THROW(FlowExpertsOracle(engine, 12, 10), BudgetError);
}

TEST(SignedCapped, OnlyTheFreeMagnitudesCostMistakes) {
  EnumeratedFamily family = signed_capped(2, 8);
  GameContext<State> ctx = enumerated_context(family);
  long long worst = 0;
  for (std::size_t f = 0; f < family.member_count(); ++f) {
    FixedStreamAdversary<State> adversary(family.flow(f, signed_to_state(0), 6));
    SignedCappedSession learner(2, 8);
    EXPECT_FALSE(learner.deterministic());
    GameReport report = run_game(learner, adversary, 6, 0, 0, ctx);
    worst = std::max(worst, report.mistakes);
  }
  EXPECT_EQ(worst, 2);
}

TEST(Baselines, PreviousStateEchoesTheLastObservation) {
  EnumeratedFamily family = hand_family();
  GameContext<State> ctx = enumerated_context(family);
  PreviousStateLearner<State> learner;
  FixedStreamAdversary<State> swap_flow(family.flow(2, 0, 3));
  EXPECT_EQ(run_game(learner, swap_flow, 3, 0, 0, ctx).mistakes, 3);
  FixedStreamAdversary<State> fixed_point(family.flow(1, 1, 2));
  EXPECT_EQ(run_game(learner, fixed_point, 2, 0, 0, ctx).mistakes, 0);
}

TEST(Baselines, FixedMemberFollowsItsOwnFlowExactly) {
  EnumeratedFamily family = hand_family();
  GameContext<State> ctx = enumerated_context(family);
  FixedMemberLearner follows_swap(family, 2);
  EXPECT_EQ(follows_swap.id(), "baseline_member2");
  FixedStreamAdversary<State> swap_flow(family.flow(2, 0, 4));
  EXPECT_EQ(run_game(follows_swap, swap_flow, 4, 0, 0, ctx).mistakes, 0);

  FixedMemberLearner follows_swap_again(family, 2);
  FixedStreamAdversary<State> const_flow(family.flow(1, 0, 2));
  EXPECT_EQ(run_game(follows_swap_again, const_flow, 2, 0, 0, ctx).mistakes, 1);
}

TEST(Baselines, RandomGuessIsSeededButNotDeterministic) {
  EnumeratedFamily family = hand_family();
  GameContext<State> ctx = enumerated_context(family);
  auto run = [&] {
    RandomGuessLearner learner(family.state_count());
    FixedStreamAdversary<State> adversary(family.flow(2, 0, 5));
    return run_game(learner, adversary, 5, 11, 0, ctx).to_json().dump();
  };
  RandomGuessLearner learner(family.state_count());
  EXPECT_FALSE(learner.deterministic());
  EXPECT_EQ(run(), run());
}

}  // namespace
}  // namespace evolab
