#include <gtest/gtest.h>

#include "evolab/errors.hpp"
#include "evolab/family.hpp"

namespace evolab {
namespace {

// Four members over {a, b}: index 0 is constant a, 1 is constant b, 2 swaps
// the states, 3 is the identity.
EnumeratedFamily hand_family() {
  return EnumeratedFamily(StateSpace({"a", "b"}), {{0, 0}, {1, 1}, {1, 0}, {0, 1}},
                          {"const_a", "const_b", "swap", "identity"}, "hand");
}

TEST(Family, ApplyIterateFlow) {
  EnumeratedFamily family = hand_family();
  EXPECT_EQ(family.member_count(), 4u);
  EXPECT_EQ(family.state_count(), 2u);
  EXPECT_EQ(family.member_label(2), "swap");
  EXPECT_EQ(family.apply(2, 0), State{1});
  EXPECT_EQ(family.iterate(2, 0, 5), State{1});
  EXPECT_EQ(family.iterate(3, 1, 9), State{1});
  EXPECT_EQ(family.flow(2, 0, 3), (Stream{0, 1, 0, 1}));
  EXPECT_THROW(family.apply(4, 0), SpecError);
  EXPECT_THROW(family.apply(0, 2), SpecError);
  EXPECT_THROW(family.member_label(4), SpecError);
}

TEST(Family, RestrictionMasksAndProjections) {
  EnumeratedFamily family = hand_family();
  const MemberSet& to_b = family.restriction_mask(0, 1);
  EXPECT_EQ(to_b.count(), 2u);
  EXPECT_TRUE(to_b.test(1));
  EXPECT_TRUE(to_b.test(2));

  MemberSet stay = family.consistent_subset(family.full_set(), 0, 0);
  EXPECT_EQ(stay.count(), 2u);
  EXPECT_TRUE(stay.test(0));
  EXPECT_TRUE(stay.test(3));

  EXPECT_EQ(family.projection(family.full_set(), 0), (std::vector<State>{0, 1}));
  MemberSet identity_only(family.member_count());
  identity_only.set(3);
  EXPECT_EQ(family.projection(identity_only, 1), (std::vector<State>{1}));
  EXPECT_EQ(family.max_projection(), 2u);
}

TEST(Family, RealizabilityWitnessesConsistentMembers) {
  EnumeratedFamily family = hand_family();
  RealizabilityResult swap_flow = family.is_realizable({0, 1, 0});
  EXPECT_TRUE(swap_flow.realizable);
  EXPECT_EQ(swap_flow.witness.count(), 1u);
  EXPECT_TRUE(swap_flow.witness.test(2));

  RealizabilityResult contradiction = family.is_realizable({0, 0, 1});
  EXPECT_FALSE(contradiction.realizable);
  EXPECT_TRUE(contradiction.witness.none());
}

TEST(Family, ComparatorsMinimizeHandCountedLosses) {
  EnumeratedFamily family = hand_family();
  // Transitions 0->1, 1->1, 1->0 cost const_a 2, const_b 1, swap 1, identity 2
  // on one-step prediction; const_b's own flow from 0 misses only the last
  // state. Ties resolve to the lowest member index.
  Stream stream{0, 1, 1, 0};
  ComparatorResult markovian = family.markovian_comparator(stream);
  EXPECT_EQ(markovian.loss, 1);
  EXPECT_EQ(markovian.member, 1u);
  ComparatorResult flow = family.flow_comparator(stream);
  EXPECT_EQ(flow.loss, 1);
  EXPECT_EQ(flow.member, 1u);
}

TEST(Family, SameTablesComparesOrderedTransitionTables) {
  EnumeratedFamily family = hand_family();
  EXPECT_TRUE(family.same_tables(hand_family()));

  EnumeratedFamily renamed(StateSpace({"a", "b"}), {{0, 0}, {1, 1}, {1, 0}, {0, 1}},
                           {"w", "x", "y", "z"}, "other");
  EXPECT_TRUE(family.same_tables(renamed));

  EnumeratedFamily reordered(StateSpace({"a", "b"}), {{1, 1}, {0, 0}, {1, 0}, {0, 1}},
                             {"const_b", "const_a", "swap", "identity"}, "hand");
  EXPECT_FALSE(family.same_tables(reordered));

  EnumeratedFamily relabeled(StateSpace({"x", "y"}), {{0, 0}, {1, 1}, {1, 0}, {0, 1}},
                             {"const_a", "const_b", "swap", "identity"}, "hand");
  EXPECT_FALSE(family.same_tables(relabeled));
}

TEST(Family, ConstructorValidatesShape) {
  StateSpace space({"a", "b"});
  EXPECT_THROW(EnumeratedFamily(space, {}, {}, "empty"), SpecError);
  EXPECT_THROW(EnumeratedFamily(space, {{0, 0}}, {"f", "g"}, "labels"), SpecError);
  EXPECT_THROW(EnumeratedFamily(space, {{0}}, {"f"}, "arity"), SpecError);
  EXPECT_THROW(EnumeratedFamily(space, {{0, 2}}, {"f"}, "target"), SpecError);
}

}  // namespace
}  // namespace evolab
