#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "evolab/errors.hpp"
#include "evolab/rational.hpp"
#include "evolab/rng.hpp"
#include "evolab/state_space.hpp"

namespace evolab {
namespace {

TEST(StateSpace, LabelIndexRoundTrip) {
  StateSpace space({"a", "b", "c"});
  EXPECT_EQ(space.size(), 3u);
  EXPECT_EQ(space.label(1), "b");
  EXPECT_EQ(space.index("c"), State{2});
  EXPECT_EQ(space.require("a"), State{0});
  EXPECT_FALSE(space.index("z").has_value());
  EXPECT_THROW(space.require("z"), SpecError);
  EXPECT_THROW(space.label(3), SpecError);
}

TEST(StateSpace, RejectsBadLabelSets) {
  EXPECT_THROW(StateSpace(std::vector<std::string>{}), SpecError);
  EXPECT_THROW(StateSpace({"a", "a"}), SpecError);
  EXPECT_THROW(StateSpace({"a", ""}), SpecError);
}

TEST(StateSpace, SignedValueMapping) {
  EXPECT_EQ(signed_to_state(0), State{0});
  EXPECT_EQ(signed_to_state(3), State{5});
  EXPECT_EQ(signed_to_state(-3), State{6});
  for (long long v = -6; v <= 6; ++v) EXPECT_EQ(state_to_signed(signed_to_state(v)), v);
}

TEST(StateSpace, SignedLabelsMatchTheMapping) {
  auto labels = signed_labels(2);
  ASSERT_EQ(labels.size(), 5u);
  StateSpace space(labels);
  for (long long v = -2; v <= 2; ++v)
    EXPECT_EQ(space.require(std::to_string(v)), signed_to_state(v));
  EXPECT_THROW(signed_labels(-1), SpecError);
}

TEST(StateSpace, BitVectorRoundTrip) {
  for (State x = 0; x < 8; ++x) EXPECT_EQ(bits_to_state(state_to_bits(x, 3)), x);
  EXPECT_EQ(bitvec_labels(2).size(), 4u);
  EXPECT_THROW(bitvec_labels(0), SpecError);
}

TEST(StateSpace, FractionLabelsAreReduced) {
  auto labels = fraction_labels(4);
  ASSERT_EQ(labels.size(), 5u);
  EXPECT_EQ(labels[0], "0");
  EXPECT_EQ(labels[1], "1/4");
  EXPECT_EQ(labels[2], "1/2");
  EXPECT_EQ(labels[3], "3/4");
  EXPECT_EQ(labels[4], "1");
  EXPECT_THROW(fraction_labels(0), SpecError);
}

TEST(Rational, NormalizesSignAndCommonFactors) {
  EXPECT_EQ(Rational(2, 4), Rational(1, 2));
  EXPECT_EQ(Rational(1, -2).num, -1);
  EXPECT_EQ(Rational(1, -2).den, 2);
  EXPECT_THROW(Rational(1, 0), SpecError);
}

TEST(Rational, ParseAndPrintRoundTrip) {
  EXPECT_EQ(Rational::parse("3/6"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("7").den, 1);
  EXPECT_EQ(Rational(5, 3).str(), "5/3");
  EXPECT_EQ(Rational(4, 1).str(), "4");
  EXPECT_THROW(Rational::parse("x/y"), SpecError);
}

TEST(Rng, SeedDerivationIsDeterministic) {
  EXPECT_EQ(derive_seed(42, 7), derive_seed(42, 7));
  EXPECT_NE(derive_seed(42, 7), derive_seed(42, 8));
  EXPECT_NE(derive_seed(42, 7), derive_seed(43, 7));
}

TEST(Rng, UniformIntStaysInRangeAndHitsEndpoints) {
  Rng rng(123);
  bool saw_lo = false, saw_hi = false;
  for (int i = 0; i < 2000; ++i) {
    auto v = rng.uniform_int(-3, 3);
    ASSERT_GE(v, -3);
    ASSERT_LE(v, 3);
    saw_lo = saw_lo || v == -3;
    saw_hi = saw_hi || v == 3;
  }
  EXPECT_TRUE(saw_lo);
  EXPECT_TRUE(saw_hi);
}

}  // namespace
}  // namespace evolab
