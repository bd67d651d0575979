#pragma once

#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "evolab/family.hpp"
#include "evolab/json.hpp"
#include "evolab/rational.hpp"
#include "evolab/trajectory_tree.hpp"

namespace evolab {

// Mistake tree for the sequential-label game: internal nodes carry instance
// states, edges carry successor states, stored level-order like
// TrajectoryTree (node i children 2i+1/2i+2; edge_labels[i] is the label on
// the edge into node i, i >= 1; entries for leaves/root are unused).
struct LittlestoneTree {
  int depth = 0;
  std::vector<State> instances;
  std::vector<State> edge_labels;
  // Lowest-index member consistent with each root-to-leaf constraint path,
  // indexed by path bits (bit t picks the child at level t+1, 0 = left).
  std::vector<std::size_t> path_members;
};

Json littlestone_tree_to_json(const LittlestoneTree& tree, const StateSpace& space);

struct SandwichRow {
  std::string gamma;
  int e_dim = 0;
  bool ok = false;
};

struct SandwichReport {
  int T = 0;
  int complexity = 0;
  std::vector<SandwichRow> rows;
  bool pass = false;
};

struct DsResult {
  int value = 0;
  // True when the reported value is provably the exact dimension (the search
  // stopped below the cap, or the cap covered the whole state space).
  bool exact = false;
};

// Shared computation engine for the combinatorial measures of one family.
// Results are memoized; all methods are safe to call from multiple threads.
class DimensionEngine {
 public:
  explicit DimensionEngine(const EnumeratedFamily& family);

  const EnumeratedFamily& family() const { return family_; }

  // Largest branching factor over depth-`depth` trees shattered by the
  // version space, rooted at x.
  int complexity(const MemberSet& version, State x, int depth);
  int complexity_at(State root, int depth);
  int complexity(int depth);  // max over roots

  TrajectoryTree witness(const MemberSet& version, State x, int depth);
  TrajectoryTree witness_at(State root, int depth);
  TrajectoryTree witness(int depth);

  // Largest d >= 1 with complexity(d) >= gamma * d, or 0 when none exists.
  int evolution_dimension(const Rational& gamma);

  SandwichReport sandwich_check(int T, const std::vector<Rational>& gammas);

  // Limit of complexity(d); computed by value iteration over the reachable
  // version-space graph.
  int branching_dimension();
  // Smallest depth at which every reachable value has stabilized.
  int stabilization_depth();

  int littlestone(const MemberSet& version);
  int littlestone_dimension();
  LittlestoneTree littlestone_witness();

 private:
  struct ComplexityKey {
    MemberSet version;
    State x;
    int depth;
    bool operator==(const ComplexityKey&) const = default;
  };
  struct ComplexityKeyHash {
    std::size_t operator()(const ComplexityKey& k) const {
      return k.version.hash() * 1315423911u ^ (static_cast<std::size_t>(k.x) << 17) ^
             static_cast<std::size_t>(k.depth);
    }
  };

  struct Split {
    int value = 0;
    State left = 0;
    State right = 0;
  };

  Split complexity_split(const MemberSet& version, State x, int depth);
  void fill_witness(TrajectoryTree& tree, std::size_t node, const MemberSet& version,
                    State x, int depth);
  void run_value_iteration();
  void fill_littlestone(LittlestoneTree& tree, std::size_t node,
                        const MemberSet& version, int depth);

  const EnumeratedFamily& family_;
  std::shared_mutex mutex_;
  std::unordered_map<ComplexityKey, int, ComplexityKeyHash> complexity_memo_;
  std::unordered_map<MemberSet, int, MemberSetHash> littlestone_memo_;
  std::optional<int> branching_dim_;
  std::optional<int> stabilization_depth_;
};

// A point set is shattered in the pseudo-cube sense when the member behaviors
// on it admit a nonempty subset in which every behavior has, in every
// coordinate, another behavior differing there and nowhere else.
bool ds_shattered(const EnumeratedFamily& family, const std::vector<State>& points);

// Largest shattered point-set size, searched in ascending order up to
// size_cap (shattering is monotone under subsets, so the first failing size
// closes the search exactly).
DsResult ds_dimension(const EnumeratedFamily& family, int size_cap);

struct DimensionReport {
  std::string family;
  std::size_t members = 0;
  std::size_t states = 0;
  std::vector<int> complexity;  // complexity[t] for t = 0..T
  std::vector<std::pair<std::string, int>> evolution;
  std::optional<int> branching;
  std::optional<int> littlestone;
  std::optional<DsResult> ds;
  std::optional<TrajectoryTree> complexity_witness;
  std::optional<LittlestoneTree> littlestone_witness;
};

Json dimension_report_json(const DimensionReport& report, const StateSpace& space);

}  // namespace evolab
