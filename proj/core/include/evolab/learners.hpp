#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "evolab/dimensions.hpp"
#include "evolab/game.hpp"
#include "evolab/multiclass.hpp"
#include "evolab/rng.hpp"

namespace evolab {

inline constexpr std::uint64_t kDefaultExpertBudget = 1'000'000;

struct Alg1Options {
  // Break prediction-score ties toward the highest state instead of the
  // lowest. The mistake guarantee does not depend on the choice.
  bool highest_tie_break = false;
  // Score every state as a candidate instead of only the projection; empty
  // restrictions never win, so predictions are unchanged.
  bool full_domain_argmax = false;
};

// Version-space learner scoring each candidate successor by the depth-budget
// complexity of the restricted version space. On realizable streams its
// mistake count is bounded by the start complexity; on inconsistency it
// freezes the version space and echoes the previous state.
class Alg1Session : public LearnerSession<State> {
 public:
  explicit Alg1Session(std::shared_ptr<DimensionEngine> engine, Alg1Options options = {});

  void reset(const State& x0, int horizon, std::uint64_t seed) override;
  State predict() override;
  void observe(const State& x) override;
  bool deterministic() const override { return true; }
  std::string id() const override { return "alg1"; }
  // potential_ok records the per-round drop of the complexity potential on
  // mistakes, checked while the stream stays realizable.
  Json diagnostics() const override;

 private:
  std::shared_ptr<DimensionEngine> engine_;
  Alg1Options options_;
  MemberSet version_;
  State prev_ = 0;
  State last_prediction_ = 0;
  int horizon_ = 0;
  int t_ = 0;
  bool fallback_ = false;
  bool potential_ok_ = true;
};

// Runs a multiclass learner on the one-step reduction: the instance of round
// t is the previous state, the label is the revealed state.
class MarkovReductionSession : public LearnerSession<State> {
 public:
  MarkovReductionSession(std::unique_ptr<MulticlassSession> inner, std::string id);

  void reset(const State& x0, int horizon, std::uint64_t seed) override;
  State predict() override;
  void observe(const State& x) override;
  bool deterministic() const override { return inner_->deterministic(); }
  std::string id() const override { return id_; }
  Json diagnostics() const override { return inner_->diagnostics(); }

 private:
  std::unique_ptr<MulticlassSession> inner_;
  std::string id_;
  State prev_ = 0;
};

std::unique_ptr<LearnerSession<State>> soa_session(std::shared_ptr<DimensionEngine> engine);

// Exponentially weighted random member: sample a member from the weight
// distribution, predict its successor of the previous state, then decay the
// weights of members that missed the revealed transition.
class EwMarkovianSession : public LearnerSession<State> {
 public:
  // eta = 0 selects sqrt(2 ln(members) / horizon) at reset.
  explicit EwMarkovianSession(const EnumeratedFamily& family, double eta = 0);

  void reset(const State& x0, int horizon, std::uint64_t seed) override;
  State predict() override;
  void observe(const State& x) override;
  bool deterministic() const override { return false; }
  std::string id() const override { return "ew_markovian"; }
  Json diagnostics() const override;

 private:
  const EnumeratedFamily& family_;
  double eta_param_;
  double eta_ = 0;
  std::vector<double> weights_;
  State prev_ = 0;
  std::optional<Rng> rng_;
};

// Shared expert pool for the flow game at one fixed horizon. An expert is a
// set L of at most complexity_bound() jump rounds plus a code assigning each
// jump round a rank into the family's successor fan-out; outside jump rounds
// the expert follows the version-space learner run on the expert's own
// predicted trajectory. Expert predictions depend only on the start state,
// so rollouts are cached per start state and shared across sessions.
class FlowExpertsOracle {
 public:
  FlowExpertsOracle(std::shared_ptr<DimensionEngine> engine, int horizon,
                    std::uint64_t expert_budget = kDefaultExpertBudget);

  const EnumeratedFamily& family() const { return engine_->family(); }
  int horizon() const { return horizon_; }
  int complexity_bound() const { return complexity_; }
  std::size_t fanout() const { return fanout_; }
  std::size_t expert_count() const { return experts_.size(); }

  // Predictions of every expert for rounds 1..T from this start state.
  const std::vector<std::vector<State>>& rollouts(State x0);

  // Smallest loss any expert incurs on the observed stream.
  long long best_expert_loss(const Stream& observed);

 private:
  struct Expert {
    std::vector<int> jump_rounds;        // ascending
    std::vector<std::size_t> jump_ranks; // one rank per jump round
  };

  std::shared_ptr<DimensionEngine> engine_;
  int horizon_;
  int complexity_ = 0;
  std::size_t fanout_ = 0;
  std::vector<Expert> experts_;
  std::mutex cache_mutex_;
  std::unordered_map<State, std::vector<std::vector<State>>> cache_;
};

// Exponentially weighted randomization over the expert pool.
class FlowExpertsSession : public LearnerSession<State> {
 public:
  // eta = 0 selects sqrt(2 ln(expert_count) / horizon) at reset.
  explicit FlowExpertsSession(std::shared_ptr<FlowExpertsOracle> oracle, double eta = 0);

  void reset(const State& x0, int horizon, std::uint64_t seed) override;
  State predict() override;
  void observe(const State& x) override;
  bool deterministic() const override { return false; }
  std::string id() const override { return "flow_experts"; }
  Json diagnostics() const override;

 private:
  std::shared_ptr<FlowExpertsOracle> oracle_;
  double eta_param_;
  double eta_ = 0;
  const std::vector<std::vector<State>>* rollouts_ = nullptr;
  std::vector<double> weights_;
  int t_ = 0;
  std::optional<Rng> rng_;
};

// Predicts that the state does not change.
template <class S>
class PreviousStateLearner : public LearnerSession<S> {
 public:
  void reset(const S& x0, int, std::uint64_t) override { prev_ = x0; }
  S predict() override { return prev_; }
  void observe(const S& x) override { prev_ = x; }
  bool deterministic() const override { return true; }
  std::string id() const override { return "baseline_previous"; }

 private:
  S prev_{};
};

// Follows one pinned member's transition table.
class FixedMemberLearner : public LearnerSession<State> {
 public:
  FixedMemberLearner(const EnumeratedFamily& family, std::size_t member);

  void reset(const State& x0, int, std::uint64_t) override { prev_ = x0; }
  State predict() override { return family_.apply(member_, prev_); }
  void observe(const State& x) override { prev_ = x; }
  bool deterministic() const override { return true; }
  std::string id() const override { return "baseline_member" + std::to_string(member_); }

 private:
  const EnumeratedFamily& family_;
  std::size_t member_;
  State prev_ = 0;
};

// Uniform random state each round.
class RandomGuessLearner : public LearnerSession<State> {
 public:
  explicit RandomGuessLearner(std::size_t state_count);

  void reset(const State& x0, int horizon, std::uint64_t seed) override;
  State predict() override;
  void observe(const State&) override {}
  bool deterministic() const override { return false; }
  std::string id() const override { return "baseline_random"; }

 private:
  std::size_t state_count_;
  std::optional<Rng> rng_;
};

// Oblivious coin-flipping schedule for the capped sign family: round t moves
// to magnitude |x0|+t (capped at the window), guessing a fresh sign while the
// source magnitude is below p and + afterwards.
class SignedCappedSession : public LearnerSession<State> {
 public:
  SignedCappedSession(int p, long long window);

  void reset(const State& x0, int horizon, std::uint64_t seed) override;
  State predict() override;
  void observe(const State&) override { ++t_; }
  bool deterministic() const override { return false; }
  std::string id() const override { return "signed_capped"; }

 private:
  int p_;
  long long window_;
  long long start_magnitude_ = 0;
  int t_ = 0;
  std::optional<Rng> rng_;
};

}  // namespace evolab
