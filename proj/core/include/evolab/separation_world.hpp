#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evolab/game.hpp"
#include "evolab/rng.hpp"

namespace evolab {

// State of the sign-revelation world: a sign mask theta (bit j-1 carries the
// sign for index j, set = plus) and a signed counter z. Labels look like
// "++-;-3".
struct SepState {
  std::uint64_t theta = 0;
  long long z = 0;
  bool operator==(const SepState&) const = default;
};

// Family indexed by sign vectors sigma in {+,-}^m (member index has bit j-1
// set when sigma_j = +). A step from (theta, z) raises the magnitude to
// |z|+1 (absorbing once it would pass zmax), signs the counter with the
// cyclically indexed sigma coordinate, and reveals the full sigma mask in
// theta on every third magnitude while hiding it (all-plus) otherwise. The
// member count is 2^m, so comparators work in closed form instead of
// enumeration.
class SeparationWorld {
 public:
  SeparationWorld(int m, long long zmax);

  int m() const { return m_; }
  long long zmax() const { return zmax_; }
  std::uint64_t member_count() const { return std::uint64_t{1} << m_; }
  std::uint64_t all_plus() const { return (std::uint64_t{1} << m_) - 1; }
  int cyclic_index(long long magnitude) const;

  SepState apply(std::uint64_t member, const SepState& x) const;
  std::vector<SepState> flow(std::uint64_t member, SepState x0, int T) const;

  std::string label(const SepState& s) const;
  SepState parse(const std::string& label) const;
  std::string member_label(std::uint64_t member) const;

  long long markovian_loss(std::uint64_t member, const std::vector<SepState>& stream) const;
  long long flow_loss(std::uint64_t member, const std::vector<SepState>& stream) const;

  // Exact despite the 2^m members: a member matching any revelation round
  // must equal that round's observed mask, so the optimum is either one of
  // those masks or the per-index majority vote over the hidden rounds
  // (ties to minus).
  ComparatorOutcome markovian_comparator(const std::vector<SepState>& stream) const;
  // Requires |z0| + T <= zmax so member flows stay unabsorbed.
  ComparatorOutcome flow_comparator(const std::vector<SepState>& stream) const;

  RealizabilityOutcome realizability(const std::vector<SepState>& stream) const;

 private:
  void check_state(const SepState& s) const;

  int m_;
  long long zmax_;
};

// Adopts the revealed mask as its member estimate and follows that member's
// table; at most 3 mistakes on realizable streams (the first revelation
// arrives by magnitude 3).
class SeparationRealizableSession : public LearnerSession<SepState> {
 public:
  explicit SeparationRealizableSession(const SeparationWorld& world);

  void reset(const SepState& x0, int horizon, std::uint64_t seed) override;
  SepState predict() override;
  void observe(const SepState& x) override;
  bool deterministic() const override { return true; }
  std::string id() const override { return "separation_realizable"; }
  Json diagnostics() const override;

 private:
  const SeparationWorld& world_;
  std::uint64_t sigma_hat_ = 0;
  SepState prev_;
};

// Oblivious stream (1, epsilon_t * t) with fresh coin signs: one-step
// behavior stays predictable from the revealed masks while every fixed
// member's own flow drifts away, so flow regret grows with the horizon.
class SeparationFlowAdversary : public AdversarySession<SepState> {
 public:
  explicit SeparationFlowAdversary(const SeparationWorld& world);

  void reset(int horizon, std::uint64_t seed) override;
  SepState start() override;
  SepState emit(const SepState& prediction) override;
  bool oblivious() const override { return true; }
  std::string id() const override { return "separation_flow"; }
  Json diagnostics() const override;

 private:
  const SeparationWorld& world_;
  int t_ = 0;
  std::optional<Rng> rng_;
};

GameContext<SepState> separation_context(const SeparationWorld& world);

}  // namespace evolab
