#pragma once

#include <cstdint>
#include <optional>

#include "evolab/family.hpp"
#include "evolab/trajectory_tree.hpp"

namespace evolab {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

struct OracleResult {
  int value = 0;
  TrajectoryTree witness;
  std::uint64_t attempts = 0;  // label placements tried, including rejected ones
};

// Exhaustive search for the largest branching factor over trees of the given
// depth that the family shatters. Candidate labels are drawn from the full
// state space in ascending order, nodes in level order, and partial trees are
// discarded as soon as some path has no consistent member, so the witness is
// the lexicographically least maximizer under that ordering. The budget caps
// label placements; exceeding it raises BudgetError. This enumeration is
// deliberately independent of the recursive machinery it is used to validate.
OracleResult brute_force_max_branching(const EnumeratedFamily& family, int depth,
                                       std::optional<State> root = std::nullopt,
                                       std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace evolab
