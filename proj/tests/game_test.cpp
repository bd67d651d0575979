#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <sstream>
#include <vector>

#include "evolab/adversaries.hpp"
#include "evolab/catalog.hpp"
#include "evolab/dimensions.hpp"
#include "evolab/game.hpp"
#include "evolab/learners.hpp"

namespace evolab {
namespace {

EnumeratedFamily hand_family() {
  return EnumeratedFamily(StateSpace({"a", "b"}), {{0, 0}, {1, 1}, {1, 0}, {0, 1}},
                          {"const_a", "const_b", "swap", "identity"}, "hand");
}

TEST(Game, MetricNamesRoundTrip) {
  for (Metric metric : {Metric::mistakes, Metric::markovian, Metric::flow})
    EXPECT_EQ(metric_from_name(metric_name(metric)), metric);
  EXPECT_THROW(metric_from_name("bogus"), SpecError);
}

TEST(Game, ReportCarriesLossesComparatorsAndRealizability) {
  EnumeratedFamily family = hand_family();
  GameContext<State> ctx = enumerated_context(family);
  // Identity predictions against the stream a,b,b,a miss rounds one and
  // three; constant b is the best comparator on both metrics with loss 1.
  FixedMemberLearner learner(family, 3);
  FixedStreamAdversary<State> adversary(Stream{0, 1, 1, 0});
  GameReport report = run_game(learner, adversary, 3, 0, 0, ctx);
  EXPECT_EQ(report.mistakes, 2);
  EXPECT_EQ(report.x0, "a");
  ASSERT_EQ(report.rounds.size(), 3u);
  EXPECT_TRUE(report.rounds[0].mistake);
  EXPECT_FALSE(report.rounds[1].mistake);
  EXPECT_EQ(report.markovian_loss.value(), 1);
  EXPECT_EQ(report.markovian_best.value(), "const_b");
  EXPECT_EQ(report.markovian_regret.value(), 1);
  EXPECT_EQ(report.flow_loss.value(), 1);
  EXPECT_EQ(report.flow_best.value(), "const_b");
  EXPECT_EQ(report.flow_regret.value(), 1);
  EXPECT_FALSE(report.realizable.value());
  EXPECT_EQ(report.realizability_witnesses, 0u);
}

TEST(Game, ReportJsonAndCsvShapes) {
  EnumeratedFamily family = hand_family();
  GameContext<State> ctx = enumerated_context(family);
  FixedMemberLearner learner(family, 2);
  FixedStreamAdversary<State> adversary(family.flow(2, 0, 3));
  GameReport report = run_game(learner, adversary, 3, 0, 0, ctx);

  Json with_rounds = report.to_json();
  ASSERT_TRUE(with_rounds.contains("rounds"));
  EXPECT_EQ(with_rounds["rounds"].size(), 3u);
  EXPECT_FALSE(report.to_json(false).contains("rounds"));

  std::stringstream csv;
  report.write_rounds_csv(csv);
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "t,prediction,truth,mistake");
  std::string first_row;
  std::getline(csv, first_row);
  EXPECT_EQ(first_row.substr(0, 2), "1,");
}

TEST(Game, ValidatesHorizonContextAndStreamLength) {
  EnumeratedFamily family = hand_family();
  GameContext<State> ctx = enumerated_context(family);
  FixedMemberLearner learner(family, 0);

  EXPECT_THROW(FixedStreamAdversary<State>(Stream{}), SpecError);
  FixedStreamAdversary<State> two_rounds(Stream{0, 1, 0});
  EXPECT_THROW(run_game(learner, two_rounds, 3, 0, 0, ctx), SpecError);
  EXPECT_THROW(run_game(learner, two_rounds, -1, 0, 0, ctx), SpecError);

  GameContext<State> bare;
  FixedStreamAdversary<State> short_stream(Stream{0, 1});
  EXPECT_THROW(run_game(learner, short_stream, 1, 0, 0, bare), SpecError);
}

TEST(Game, FlagsRandomizedLearnersAgainstAdaptiveAdversaries) {
  EnumeratedFamily family = bool_mod2(2);
  DimensionEngine engine(family);
  GameContext<State> ctx = enumerated_context(family);
  TrajectoryTree witness = engine.witness(2);

  RandomGuessLearner random(family.state_count());
  TreeAdversaryDeterministic adaptive(family, witness);
  EXPECT_TRUE(run_game(random, adaptive, 2, 3, 0, ctx).randomized_vs_adaptive);

  FixedMemberLearner fixed(family, 0);
  TreeAdversaryDeterministic adaptive_again(family, witness);
  EXPECT_FALSE(run_game(fixed, adaptive_again, 2, 0, 0, ctx).randomized_vs_adaptive);
}

TEST(MonteCarlo, SummaryIsThreadScheduleInvariant) {
  EnumeratedFamily family = bool_mod2(2);
  DimensionEngine engine(family);
  GameContext<State> ctx = enumerated_context(family);
  TrajectoryTree witness = engine.witness(4);
  LearnerFactory<State> make_learner = [&] { return std::make_unique<EwMarkovianSession>(family); };
  AdversaryFactory<State> make_adversary = [&] {
    return std::make_unique<TreeAdversaryRandomPath>(family, witness);
  };
  MonteCarloSummary serial = monte_carlo(make_learner, make_adversary, 4, 48, 99,
                                         Metric::markovian, ctx, nullptr, 1);
  MonteCarloSummary parallel = monte_carlo(make_learner, make_adversary, 4, 48, 99,
                                           Metric::markovian, ctx, nullptr, 8);
  ASSERT_EQ(serial.values.size(), 48u);
  EXPECT_EQ(serial.values, parallel.values);
  EXPECT_EQ(serial.mean, parallel.mean);
  EXPECT_EQ(serial.stddev, parallel.stddev);
}

TEST(MonteCarlo, ReportCallbackSeesEveryReplicaInOrder) {
  EnumeratedFamily family = hand_family();
  GameContext<State> ctx = enumerated_context(family);
  LearnerFactory<State> make_learner = [&] { return std::make_unique<FixedMemberLearner>(family, 2); };
  AdversaryFactory<State> make_adversary = [&] {
    return std::make_unique<FixedStreamAdversary<State>>(family.flow(2, 0, 3));
  };
  std::vector<std::size_t> seen;
  monte_carlo(make_learner, make_adversary, 3, 7, 1, Metric::mistakes, ctx,
              [&](const GameReport&, std::size_t replica) { seen.push_back(replica); });
  EXPECT_EQ(seen, (std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6}));
}

TEST(MonteCarlo, DeterministicPairsHaveZeroSpread) {
  EnumeratedFamily family = hand_family();
  GameContext<State> ctx = enumerated_context(family);
  LearnerFactory<State> make_learner = [&] { return std::make_unique<FixedMemberLearner>(family, 3); };
  AdversaryFactory<State> make_adversary = [&] {
    return std::make_unique<FixedStreamAdversary<State>>(Stream{0, 1, 1, 0});
  };
  MonteCarloSummary summary =
      monte_carlo(make_learner, make_adversary, 3, 4, 5, Metric::mistakes, ctx);
  EXPECT_EQ(summary.mean, 2.0);
  EXPECT_EQ(summary.stddev, 0.0);
  EXPECT_EQ(summary.min, summary.max);
  EXPECT_EQ(summary.trials, 4u);
}

TEST(MonteCarlo, CiRadiusMatchesHoeffdingAtTheReportedDelta) {
  EnumeratedFamily family = hand_family();
  GameContext<State> ctx = enumerated_context(family);
  LearnerFactory<State> make_learner = [&] { return std::make_unique<FixedMemberLearner>(family, 0); };
  AdversaryFactory<State> make_adversary = [&] {
    return std::make_unique<FixedStreamAdversary<State>>(family.flow(1, 0, 6));
  };
  MonteCarloSummary summary =
      monte_carlo(make_learner, make_adversary, 6, 25, 5, Metric::mistakes, ctx);
  double expected = 6.0 * std::sqrt(std::log(2.0 / summary.delta) / (2.0 * 25));
  EXPECT_NEAR(summary.ci_radius, expected, 1e-12);
}

TEST(MonteCarlo, MetricsRequireTheMatchingComparator) {
  EnumeratedFamily family = hand_family();
  GameContext<State> full = enumerated_context(family);
  GameContext<State> bare;
  bare.label = full.label;
  bare.equal = full.equal;
  LearnerFactory<State> make_learner = [&] { return std::make_unique<FixedMemberLearner>(family, 0); };
  AdversaryFactory<State> make_adversary = [&] {
    return std::make_unique<FixedStreamAdversary<State>>(family.flow(1, 0, 3));
  };
  EXPECT_THROW(
      monte_carlo(make_learner, make_adversary, 3, 2, 1, Metric::markovian, bare),
      CapabilityError);
  EXPECT_THROW(monte_carlo(make_learner, make_adversary, 3, 2, 1, Metric::flow, bare),
               CapabilityError);
  EXPECT_THROW(monte_carlo(make_learner, make_adversary, 3, 0, 1, Metric::mistakes, full),
               SpecError);
}

TEST(ExhaustiveSuite, CoversEveryMemberStartPairWithinBudget) {
  EnumeratedFamily family = hand_family();
  LearnerFactory<State> make_learner = [] { return std::make_unique<PreviousStateLearner<State>>(); };
  ExhaustiveResult result = exhaustive_realizable_suite(family, make_learner, 3);
  EXPECT_EQ(result.runs, 8u);
  EXPECT_THROW(exhaustive_realizable_suite(family, make_learner, 3, 5), BudgetError);
}

}  // namespace
}  // namespace evolab
