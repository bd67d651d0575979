#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "evolab/family.hpp"
#include "evolab/json.hpp"

namespace evolab {

// Sign tables y = Wx over GF(2) on {0,1}^n, one member per 0/1 matrix W.
EnumeratedFamily bool_mod2(int n);

// Indicator tables y = 1{Wx > 0} coordinatewise, one member per 0/1 matrix W
// (distinct tables are collapsed).
EnumeratedFamily bool_threshold(int n);

// Magnitude escalators on {-w..w}: |x| steps to |x|+1, the new sign follows
// the member's choice at magnitudes in S and is + elsewhere; |x| = w absorbs.
EnumeratedFamily f_s_family(std::vector<long long> s_set, long long window);

// Step functions 1{x >= j/m} on the grid {0, 1/m, ..., 1}, one member per
// interior threshold j = 1..m-1.
EnumeratedFamily thresholds_grid(int m);

// The two step functions at 1/2 (closed and open) on {0, 1/2, 1}; they differ
// only at the midpoint.
EnumeratedFamily threshold_pair();

// Magnitude escalators whose sign is free below p and forced + from p to the
// absorbing cap w.
EnumeratedFamily signed_capped(int p, long long window);

// Magnitude escalators with p switch points in {1..w-1}; the sign is constant
// between consecutive switch points. Duplicate tables are collapsed.
EnumeratedFamily switching_family(int p, long long window);

// d fan-out states 1..d, each mapping to a member-chosen sign of d+i, and
// return states +-(d+1)..+-(2d) mapping back to their magnitude minus d.
EnumeratedFamily markovian_tightness(int d);

// Every function on {0..k-1}; member index encodes the table base k.
EnumeratedFamily all_functions(int k);

struct LowrankSpec {
  int n = 0;
  int r = 0;
  long long entry_bound = 2;
};

struct SeparationSpec {
  int m = 0;
  long long zmax = 0;
};

struct FamilySpec {
  std::string family;
  Json params = Json::object();
};

FamilySpec family_spec_from_json(const Json& j);
Json family_spec_to_json(const FamilySpec& spec);

// Result of building a family spec: exactly one of the three worlds is set.
struct BuiltFamily {
  FamilySpec spec;
  std::optional<EnumeratedFamily> enumerated;
  std::optional<LowrankSpec> lowrank;
  std::optional<SeparationSpec> separation;
};

BuiltFamily build_family(const FamilySpec& spec);

const EnumeratedFamily& require_enumerated(const BuiltFamily& built);

// One row per (member, state) with printable labels; header
// "member,state,next_state".
void export_family_csv(std::ostream& out, const EnumeratedFamily& family);

// Known family ids with a one-line parameter summary.
std::vector<std::pair<std::string, std::string>> catalog_listing();

}  // namespace evolab
