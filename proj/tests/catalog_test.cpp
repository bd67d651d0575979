#include <gtest/gtest.h>

#include <set>
#include <sstream>
#include <vector>

#include "evolab/catalog.hpp"
#include "evolab/errors.hpp"
#include "evolab/state_space.hpp"

namespace evolab {
namespace {

TEST(Catalog, BooleanMatrixFamilies) {
  EnumeratedFamily mod2 = bool_mod2(2);
  EXPECT_EQ(mod2.member_count(), 16u);
  EXPECT_EQ(mod2.state_count(), 4u);
  EXPECT_EQ(mod2.name(), "bool_mod2(n=2)");

  EnumeratedFamily threshold = bool_threshold(2);
  EXPECT_EQ(threshold.member_count(), 16u);
  EXPECT_EQ(threshold.state_count(), 4u);
  EXPECT_FALSE(mod2.same_tables(threshold));

  EXPECT_THROW(bool_mod2(0), SpecError);
  EXPECT_THROW(bool_threshold(4), SpecError);
}

TEST(Catalog, SignSetFamilyIgnoresMagnitudesBeyondTheWindow) {
  EnumeratedFamily family = f_s_family({1, 2, 4}, 8);
  EXPECT_EQ(family.member_count(), 8u);
  EXPECT_EQ(family.state_count(), 17u);
  EXPECT_TRUE(f_s_family({1, 2, 9}, 8).same_tables(f_s_family({1, 2}, 8)));
  EXPECT_THROW(f_s_family({-1}, 8), SpecError);
  EXPECT_THROW(f_s_family({1}, 0), SpecError);
}

TEST(Catalog, ThresholdsGridShape) {
  EnumeratedFamily family = thresholds_grid(7);
  EXPECT_EQ(family.member_count(), 6u);
  EXPECT_EQ(family.state_count(), 8u);
  EXPECT_EQ(family.member_label(0), "t=1/7");
  // Each member collapses the grid to its endpoints around one threshold.
  State one = family.space().require("1");
  State zero = family.space().require("0");
  EXPECT_EQ(family.apply(0, family.space().require("3/7")), one);
  EXPECT_EQ(family.apply(5, family.space().require("3/7")), zero);
  EXPECT_THROW(thresholds_grid(1), SpecError);
  EXPECT_THROW(thresholds_grid(65), SpecError);
}

TEST(Catalog, ThresholdPairDisagreesOnlyAtTheMidpoint) {
  EnumeratedFamily family = threshold_pair();
  ASSERT_EQ(family.member_count(), 2u);
  ASSERT_EQ(family.state_count(), 3u);
  State mid = family.space().require("1/2");
  EXPECT_EQ(family.apply(0, mid), family.space().require("1"));
  EXPECT_EQ(family.apply(1, mid), family.space().require("0"));
  EXPECT_EQ(family.apply(0, 0), family.apply(1, 0));
  EXPECT_EQ(family.apply(0, 2), family.apply(1, 2));
}

TEST(Catalog, SignedCappedForcesSignsAboveP) {
  EnumeratedFamily family = signed_capped(2, 8);
  EXPECT_EQ(family.member_count(), 4u);
  EXPECT_EQ(family.state_count(), 17u);
  State cap_plus = signed_to_state(8);
  State cap_minus = signed_to_state(-8);
  std::set<State> from_zero;
  for (std::size_t f = 0; f < family.member_count(); ++f) {
    EXPECT_EQ(family.apply(f, cap_plus), cap_plus);
    EXPECT_EQ(family.apply(f, cap_minus), cap_minus);
    EXPECT_EQ(family.apply(f, signed_to_state(3)), signed_to_state(4));
    from_zero.insert(family.apply(f, signed_to_state(0)));
  }
  EXPECT_EQ(from_zero, (std::set<State>{signed_to_state(1), signed_to_state(-1)}));
  EXPECT_THROW(signed_capped(9, 8), SpecError);
  EXPECT_THROW(signed_capped(1, 0), SpecError);
}

TEST(Catalog, SwitchingFamilyDeduplicatesTables) {
  EnumeratedFamily family = switching_family(1, 8);
  // One switch point from {1..7} and four sign patterns; the monotone
  // patterns collapse across switch points, leaving 2 + 7 * 2 tables.
  EXPECT_EQ(family.member_count(), 16u);
  EXPECT_EQ(family.state_count(), 17u);
  std::set<std::vector<State>> tables;
  for (std::size_t f = 0; f < family.member_count(); ++f) tables.insert(family.table(f));
  EXPECT_EQ(tables.size(), family.member_count());

  EXPECT_EQ(switching_family(0, 8).member_count(), 2u);
  EXPECT_THROW(switching_family(8, 8), SpecError);
}

TEST(Catalog, MarkovianTightnessFansOutAndReturns) {
  EnumeratedFamily family = markovian_tightness(2);
  EXPECT_EQ(family.member_count(), 4u);
  EXPECT_EQ(family.state_count(), 6u);
  for (std::size_t f = 0; f < family.member_count(); ++f) {
    for (State x = 0; x < 2; ++x) EXPECT_GE(family.apply(f, x), State{2});
    for (State x = 2; x < 6; ++x) EXPECT_LT(family.apply(f, x), State{2});
  }
  EXPECT_THROW(markovian_tightness(0), SpecError);
  EXPECT_THROW(markovian_tightness(13), SpecError);
}

TEST(Catalog, AllFunctionsEnumeratesEveryTable) {
  EnumeratedFamily family = all_functions(3);
  EXPECT_EQ(family.member_count(), 27u);
  EXPECT_EQ(family.state_count(), 3u);
  std::set<std::vector<State>> tables;
  for (std::size_t f = 0; f < family.member_count(); ++f) tables.insert(family.table(f));
  EXPECT_EQ(tables.size(), 27u);
  EXPECT_THROW(all_functions(6), SpecError);
}

TEST(Catalog, SpecJsonRoundTrip) {
  FamilySpec spec;
  spec.family = "f_s";
  spec.params = Json{{"S", Json::array({1, 2})}, {"w", 8}};
  FamilySpec parsed = family_spec_from_json(family_spec_to_json(spec));
  EXPECT_EQ(parsed.family, spec.family);
  EXPECT_EQ(parsed.params, spec.params);

  EXPECT_THROW(family_spec_from_json(Json::array()), SpecError);
  EXPECT_THROW(family_spec_from_json(Json{{"params", Json::object()}}), SpecError);
  EXPECT_THROW(family_spec_from_json(Json{{"family", "f_s"}, {"extra", 1}}), SpecError);
}

TEST(Catalog, BuildFamilySetsExactlyOneWorld) {
  BuiltFamily enumerated = build_family({"bool_mod2", Json{{"n", 2}}});
  EXPECT_TRUE(enumerated.enumerated.has_value());
  EXPECT_FALSE(enumerated.lowrank.has_value());
  EXPECT_FALSE(enumerated.separation.has_value());
  EXPECT_EQ(require_enumerated(enumerated).member_count(), 16u);

  BuiltFamily lowrank = build_family({"lowrank_linear", Json{{"n", 4}, {"r", 2}}});
  ASSERT_TRUE(lowrank.lowrank.has_value());
  EXPECT_EQ(lowrank.lowrank->n, 4);
  EXPECT_EQ(lowrank.lowrank->r, 2);
  EXPECT_THROW(require_enumerated(lowrank), CapabilityError);

  BuiltFamily separation = build_family({"separation", Json{{"m", 3}, {"zmax", 40}}});
  ASSERT_TRUE(separation.separation.has_value());
  EXPECT_EQ(separation.separation->m, 3);
}

TEST(Catalog, BuildFamilyRejectsBadSpecs) {
  EXPECT_THROW(build_family({"bogus", Json::object()}), SpecError);
  EXPECT_THROW(build_family({"bool_mod2", Json{{"n", 2}, {"q", 1}}}), SpecError);
  EXPECT_THROW(build_family({"bool_mod2", Json{{"n", "two"}}}), SpecError);
  EXPECT_THROW(build_family({"lowrank_linear", Json{{"n", 4}, {"r", 4}}}), SpecError);
  EXPECT_THROW(build_family({"separation", Json{{"m", 0}, {"zmax", 40}}}), SpecError);
}

TEST(Catalog, ExportCsvListsEveryTransition) {
  EnumeratedFamily family = threshold_pair();
  std::stringstream out;
  export_family_csv(out, family);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(out, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 7u);
  EXPECT_EQ(lines[0], "member,state,next_state");
}

TEST(Catalog, ListingCoversEveryFamilyId) {
  auto listing = catalog_listing();
  std::set<std::string> ids;
  for (const auto& [id, summary] : listing) {
    EXPECT_FALSE(summary.empty());
    ids.insert(id);
  }
  EXPECT_EQ(ids.size(), 11u);
  EXPECT_TRUE(ids.count("bool_mod2"));
  EXPECT_TRUE(ids.count("lowrank_linear"));
  EXPECT_TRUE(ids.count("separation"));
}

}  // namespace
}  // namespace evolab
