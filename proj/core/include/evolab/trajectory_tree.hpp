#pragma once

#include <cstdint>
#include <vector>

#include "evolab/family.hpp"
#include "evolab/json.hpp"
#include "evolab/state_space.hpp"

namespace evolab {

// Complete binary tree of the given depth whose nodes carry states, stored in
// level order: node 0 is the root, node i has children 2i+1 (the left, "-1"
// branch) and 2i+2 (the right, "+1" branch).
struct TrajectoryTree {
  int depth = 0;
  std::vector<State> labels;

  static std::size_t node_count(int depth);

  State root() const;

  // States along a root-to-leaf walk; bit t of `path` (t = 0..depth-1) picks
  // the child at level t+1, 0 = left, 1 = right. Length depth+1.
  std::vector<State> path_states(std::uint64_t path) const;

  // Node indices along the same walk.
  std::vector<std::size_t> path_nodes(std::uint64_t path) const;

  bool operator==(const TrajectoryTree&) const = default;
};

// Minimum over root-to-leaf paths of the number of levels whose two children
// (below the visited node) carry different states.
int branching_factor(const TrajectoryTree& tree);

struct ShatterResult {
  bool shattered = false;
  // For each of the 2^depth paths, the lowest-index member realizing it;
  // meaningful only when shattered.
  std::vector<std::size_t> path_members;
};

// A tree is shattered by the family when every root-to-leaf path is the
// prefix of some member's flow (node state maps to the next node state).
ShatterResult is_shattered(const TrajectoryTree& tree, const EnumeratedFamily& family);

// JSON format: {"depth": d, "labels": {"": root, "0": left child, "1": right
// child, "00": ..., ...}} with keys giving the path prefix of each node.
Json tree_to_json(const TrajectoryTree& tree, const StateSpace& space);
TrajectoryTree tree_from_json(const Json& j, const StateSpace& space);

// Path prefix ("" for the root, then '0'/'1' per level) of a level-order node
// index; used as the node key in tree JSON.
std::string tree_prefix(std::size_t node);

}  // namespace evolab
