#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evolab/dimensions.hpp"
#include "evolab/family.hpp"
#include "evolab/game.hpp"
#include "evolab/rng.hpp"
#include "evolab/trajectory_tree.hpp"

namespace evolab {

// Walks a shattered tree against the learner: at each level it reveals a
// child differing from the prediction (left preferred when both differ), and
// past the leaves it pads with the flow of the lowest member consistent with
// the walked path.
class TreeAdversaryDeterministic : public AdversarySession<State> {
 public:
  TreeAdversaryDeterministic(const EnumeratedFamily& family, TrajectoryTree witness);

  void reset(int horizon, std::uint64_t seed) override;
  State start() override;
  State emit(const State& prediction) override;
  bool oblivious() const override { return false; }
  std::string id() const override { return "tree_walk"; }
  Json diagnostics() const override;

 private:
  const EnumeratedFamily& family_;
  TrajectoryTree witness_;
  std::vector<std::size_t> path_members_;
  std::uint64_t path_ = 0;
  std::size_t node_ = 0;
  State prev_ = 0;
  std::size_t member_ = 0;
  int t_ = 0;
};

// Follows a uniformly random root-to-leaf path of the witness, ignoring the
// learner; pads past the leaves like the deterministic walk.
class TreeAdversaryRandomPath : public AdversarySession<State> {
 public:
  TreeAdversaryRandomPath(const EnumeratedFamily& family, TrajectoryTree witness);

  void reset(int horizon, std::uint64_t seed) override;
  State start() override;
  State emit(const State& prediction) override;
  bool oblivious() const override { return true; }
  std::string id() const override { return "tree_path"; }
  Json diagnostics() const override;

 private:
  const EnumeratedFamily& family_;
  TrajectoryTree witness_;
  std::vector<std::size_t> path_members_;
  std::uint64_t path_ = 0;
  std::size_t node_ = 0;
  State prev_ = 0;
  std::size_t member_ = 0;
  int t_ = 0;
};

// Forces a mistake in each of the first n rounds of the bit-vector worlds by
// keeping at least two consistent continuations available, then reveals the
// unique consistent matrix and follows its flow. The mod2 variant walks fresh
// basis vectors; the threshold variant strips one coordinate per round from
// the all-ones vector.
class BooleanForcingAdversary : public AdversarySession<State> {
 public:
  enum class Kind { mod2, threshold };

  BooleanForcingAdversary(int n, Kind kind);

  void reset(int horizon, std::uint64_t seed) override;
  State start() override;
  State emit(const State& prediction) override;
  bool oblivious() const override { return false; }
  std::string id() const override;
  Json diagnostics() const override;

  // Index of the revealed matrix in the matching catalog family; set once the
  // forcing rounds are over.
  std::optional<std::uint64_t> member_index() const;

 private:
  State apply_rows(State x) const;
  void resolve();

  int n_;
  Kind kind_;
  int t_ = 0;
  State prev_ = 0;
  std::vector<State> stream_;
  State used_coords_ = 0;
  std::vector<int> removed_;
  std::vector<State> rows_;
  bool resolved_ = false;
};

// Oblivious lower-bound stream for the one-step game built from a mistake
// tree: blocks of probe rounds at sampled depths along a uniformly random
// path. Refuses witnesses whose paths repeat instances. Horizon must be
// 2r-1 with r = floor((depth+2)/3).
class LittlestoneBlockAdversary : public AdversarySession<State> {
 public:
  LittlestoneBlockAdversary(const EnumeratedFamily& family, LittlestoneTree witness);

  void reset(int horizon, std::uint64_t seed) override;
  State start() override;
  State emit(const State& prediction) override;
  bool oblivious() const override { return true; }
  std::string id() const override { return "littlestone_blocks"; }
  // Carries the sampled path, block depths, the path's witness member, and
  // that member's one-step loss on the emitted stream (the certificate).
  Json diagnostics() const override;

 private:
  State node_instance(int depth) const;
  State edge_label(int depth) const;

  const EnumeratedFamily& family_;
  LittlestoneTree witness_;
  int r_ = 0;
  std::uint64_t path_ = 0;
  std::vector<int> blocks_;
  std::vector<State> emissions_;
  State x0_ = 0;
  std::size_t member_ = 0;
  long long member_loss_ = 0;
  std::size_t t_ = 0;
};

// Random walk between the agreement and disagreement regions of two members,
// calibrated so neither member (nor any learner) can anticipate the coin.
class TwoFunctionAdversary : public AdversarySession<State> {
 public:
  TwoFunctionAdversary(const EnumeratedFamily& family, std::size_t f1, std::size_t f2);

  void reset(int horizon, std::uint64_t seed) override;
  State start() override;
  State emit(const State& prediction) override;
  bool oblivious() const override { return true; }
  std::string id() const override { return "two_function"; }
  Json diagnostics() const override;

 private:
  const EnumeratedFamily& family_;
  std::size_t f1_;
  std::size_t f2_;
  State x0_ = 0;
  State prev_ = 0;
  std::optional<Rng> rng_;
};

// Oblivious one-step lower-bound stream over the fan-out family: d blocks of
// k coin-flip excursions each, with a boundary step after each block that no
// member predicts. Horizon must be 2kd-1 with k odd.
class MarkovianTightnessAdversary : public AdversarySession<State> {
 public:
  MarkovianTightnessAdversary(int d, int k);

  void reset(int horizon, std::uint64_t seed) override;
  State start() override;
  State emit(const State& prediction) override;
  bool oblivious() const override { return true; }
  std::string id() const override { return "markovian_tightness"; }
  Json diagnostics() const override;

 private:
  int d_;
  int k_;
  std::vector<State> emissions_;
  std::size_t t_ = 0;
};

// Oblivious flow-game lower-bound stream over the switching family: fresh
// random sign at every magnitude 1..T from start state 0. Horizon must be
// k(p+1) with k odd and fit inside the window.
class SwitchingTightnessAdversary : public AdversarySession<State> {
 public:
  SwitchingTightnessAdversary(int p, int k, long long window);

  void reset(int horizon, std::uint64_t seed) override;
  State start() override;
  State emit(const State& prediction) override;
  bool oblivious() const override { return true; }
  std::string id() const override { return "switching_tightness"; }
  Json diagnostics() const override;

 private:
  int p_;
  int k_;
  long long window_;
  int t_ = 0;
  std::optional<Rng> rng_;
};

}  // namespace evolab
