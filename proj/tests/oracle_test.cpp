#include <gtest/gtest.h>

#include "evolab/catalog.hpp"
#include "evolab/dimensions.hpp"
#include "evolab/errors.hpp"
#include "evolab/oracle.hpp"

namespace evolab {
namespace {

TEST(Oracle, AgreesWithTheRecursiveEngine) {
  EnumeratedFamily family = bool_mod2(2);
  DimensionEngine engine(family);
  for (int depth = 0; depth <= 3; ++depth) {
    OracleResult result = brute_force_max_branching(family, depth);
    EXPECT_EQ(result.value, engine.complexity(depth)) << "depth " << depth;
    EXPECT_GT(result.attempts, 0u);
  }
  EXPECT_EQ(brute_force_max_branching(family, 2).value, 2);
}

TEST(Oracle, WitnessIsShatteredWithMatchingBranching) {
  EnumeratedFamily family = bool_threshold(2);
  for (int depth = 1; depth <= 3; ++depth) {
    OracleResult result = brute_force_max_branching(family, depth);
    EXPECT_EQ(result.witness.depth, depth);
    EXPECT_TRUE(is_shattered(result.witness, family).shattered);
    EXPECT_EQ(branching_factor(result.witness), result.value);
  }
}

TEST(Oracle, RootRestrictionNeverExceedsTheGlobalValue) {
  EnumeratedFamily family = all_functions(3);
  int global = brute_force_max_branching(family, 2).value;
  for (State root = 0; root < family.state_count(); ++root) {
    OracleResult pinned = brute_force_max_branching(family, 2, root);
    EXPECT_LE(pinned.value, global);
    EXPECT_EQ(pinned.witness.root(), root);
  }
}

TEST(Oracle, DepthZeroIsTrivial) {
  EnumeratedFamily family = threshold_pair();
  OracleResult result = brute_force_max_branching(family, 0);
  EXPECT_EQ(result.value, 0);
  EXPECT_EQ(result.witness.labels.size(), 1u);
}

TEST(Oracle, TinyBudgetTripsWithDiagnostics) {
  EnumeratedFamily family = bool_mod2(2);
  try {
    brute_force_max_branching(family, 3, std::nullopt, 3);
    FAIL() << "expected BudgetError";
  } catch (const BudgetError& e) {
    EXPECT_GT(e.required(), e.budget());
    EXPECT_EQ(e.budget(), 3u);
    EXPECT_EQ(e.exit_code(), 3);
  }
}

}  // namespace
}  // namespace evolab
