#include "evolab/learners.hpp"

#include <algorithm>
#include <cmath>

#include "evolab/errors.hpp"

namespace evolab {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > ~std::uint64_t{0} / a) return ~std::uint64_t{0};
  return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  if (b > ~std::uint64_t{0} - a) return ~std::uint64_t{0};
  return a + b;
}

// sum over i = 0..max_jumps of C(horizon, i) * fanout^i, saturating.
std::uint64_t expert_pool_size(int horizon, int max_jumps, std::size_t fanout) {
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(horizon, 0)
  std::uint64_t power = 1;  // fanout^0
  for (int i = 0; i <= max_jumps; ++i) {
    total = saturating_add(total, saturating_mul(binom, power));
    binom = saturating_mul(binom, static_cast<std::uint64_t>(horizon - i)) /
            static_cast<std::uint64_t>(i + 1);
    power = saturating_mul(power, fanout);
  }
  return total;
}

}  // namespace

Alg1Session::Alg1Session(std::shared_ptr<DimensionEngine> engine, Alg1Options options)
    : engine_(std::move(engine)), options_(options) {
  if (!engine_) throw SpecError("alg1 needs a dimension engine");
}

void Alg1Session::reset(const State& x0, int horizon, std::uint64_t) {
  if (horizon < 0) throw SpecError("horizon must be non-negative");
  version_ = engine_->family().full_set();
  prev_ = x0;
  last_prediction_ = x0;
  horizon_ = horizon;
  t_ = 0;
  fallback_ = false;
  potential_ok_ = true;
}

State Alg1Session::predict() {
  if (fallback_) {
    last_prediction_ = prev_;
    return prev_;
  }
  const EnumeratedFamily& family = engine_->family();
  int depth = horizon_ - t_ - 1;
  std::vector<State> candidates;
  if (options_.full_domain_argmax) {
    candidates.resize(family.state_count());
    for (State y = 0; y < family.state_count(); ++y) candidates[y] = y;
  } else {
    candidates = family.projection(version_, prev_);
    if (candidates.size() == 1) {
      last_prediction_ = candidates[0];
      return candidates[0];
    }
  }
  if (options_.highest_tie_break) std::reverse(candidates.begin(), candidates.end());
  State best = prev_;
  int best_value = -2;
  for (State y : candidates) {
    MemberSet restricted = version_ & family.restriction_mask(prev_, y);
    int value = restricted.none() ? -1 : engine_->complexity(restricted, y, depth);
    if (value > best_value) {
      best_value = value;
      best = y;
    }
  }
  last_prediction_ = best;
  return best;
}

void Alg1Session::observe(const State& x) {
  if (!fallback_) {
    int before = engine_->complexity(version_, prev_, horizon_ - t_);
    MemberSet next = engine_->family().consistent_subset(version_, prev_, x);
    if (next.none()) {
      fallback_ = true;
    } else {
      version_ = std::move(next);
      int after = engine_->complexity(version_, x, horizon_ - t_ - 1);
      int drop = last_prediction_ != x ? 1 : 0;
      if (after > before - drop) potential_ok_ = false;
    }
  }
  prev_ = x;
  ++t_;
}

Json Alg1Session::diagnostics() const {
  return Json{{"fallback", fallback_}, {"potential_ok", potential_ok_}};
}

MarkovReductionSession::MarkovReductionSession(std::unique_ptr<MulticlassSession> inner,
                                               std::string id)
    : inner_(std::move(inner)), id_(std::move(id)) {
  if (!inner_) throw SpecError("reduction needs an inner learner");
}

void MarkovReductionSession::reset(const State& x0, int horizon, std::uint64_t seed) {
  inner_->reset(horizon, seed);
  prev_ = x0;
}

State MarkovReductionSession::predict() { return inner_->predict(prev_); }

void MarkovReductionSession::observe(const State& x) {
  inner_->update(prev_, x);
  prev_ = x;
}

std::unique_ptr<LearnerSession<State>> soa_session(
    std::shared_ptr<DimensionEngine> engine) {
  return std::make_unique<MarkovReductionSession>(
      std::make_unique<SoaMulticlass>(std::move(engine)), "soa");
}

EwMarkovianSession::EwMarkovianSession(const EnumeratedFamily& family, double eta)
    : family_(family), eta_param_(eta) {
  if (eta < 0) throw SpecError("learning rate must be non-negative");
}

void EwMarkovianSession::reset(const State& x0, int horizon, std::uint64_t seed) {
  std::size_t members = family_.member_count();
  weights_.assign(members, 1.0 / static_cast<double>(members));
  eta_ = eta_param_ > 0
             ? eta_param_
             : std::sqrt(2.0 * std::log(static_cast<double>(members)) /
                         static_cast<double>(std::max(horizon, 1)));
  prev_ = x0;
  rng_.emplace(seed);
}

State EwMarkovianSession::predict() {
  std::size_t f = rng_->categorical(weights_);
  return family_.apply(f, prev_);
}

void EwMarkovianSession::observe(const State& x) {
  double decay = std::exp(-eta_);
  double total = 0;
  for (std::size_t f = 0; f < weights_.size(); ++f) {
    if (family_.apply(f, prev_) != x) weights_[f] *= decay;
    total += weights_[f];
  }
  for (double& w : weights_) w /= total;
  prev_ = x;
}

Json EwMarkovianSession::diagnostics() const { return Json{{"eta", eta_}}; }

FlowExpertsOracle::FlowExpertsOracle(std::shared_ptr<DimensionEngine> engine,
                                     int horizon, std::uint64_t expert_budget)
    : engine_(std::move(engine)), horizon_(horizon) {
  if (!engine_) throw SpecError("expert pool needs a dimension engine");
  if (horizon_ < 0) throw SpecError("horizon must be non-negative");
  complexity_ = engine_->complexity(horizon_);
  fanout_ = engine_->family().max_projection();
  std::uint64_t pool = expert_pool_size(horizon_, complexity_, fanout_);
  if (pool > expert_budget)
    throw BudgetError("expert pool exceeds the budget", pool, expert_budget);
  experts_.reserve(pool);
  std::vector<int> combo;
  for (int size = 0; size <= complexity_; ++size) {
    combo.assign(static_cast<std::size_t>(size), 0);
    for (int i = 0; i < size; ++i) combo[static_cast<std::size_t>(i)] = i + 1;
    if (size > horizon_) break;
    while (true) {
      // All rank codes for this jump set, first round's rank cycling fastest.
      std::vector<std::size_t> ranks(static_cast<std::size_t>(size), 0);
      while (true) {
        experts_.push_back({combo, ranks});
        std::size_t pos = 0;
        while (pos < ranks.size()) {
          if (++ranks[pos] < fanout_) break;
          ranks[pos] = 0;
          ++pos;
        }
        if (pos == ranks.size()) break;
      }
      if (size == 0) break;
      int i = size - 1;
      while (i >= 0 && combo[static_cast<std::size_t>(i)] == horizon_ - (size - 1 - i))
        --i;
      if (i < 0) break;
      ++combo[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < size; ++j)
        combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

const std::vector<std::vector<State>>& FlowExpertsOracle::rollouts(State x0) {
  std::lock_guard lock(cache_mutex_);
  auto it = cache_.find(x0);
  if (it != cache_.end()) return it->second;
  const EnumeratedFamily& family = engine_->family();
  MemberSet full = family.full_set();
  std::vector<std::vector<State>> out(experts_.size());
  for (std::size_t e = 0; e < experts_.size(); ++e) {
    const Expert& expert = experts_[e];
    Alg1Session follower(engine_);
    follower.reset(x0, horizon_, 0);
    State prev = x0;
    std::vector<State> predictions;
    predictions.reserve(static_cast<std::size_t>(horizon_));
    std::size_t jump = 0;
    for (int t = 1; t <= horizon_; ++t) {
      State p = follower.predict();
      if (jump < expert.jump_rounds.size() && expert.jump_rounds[jump] == t) {
        std::vector<State> successors = family.projection(full, prev);
        p = successors[std::min(expert.jump_ranks[jump], successors.size() - 1)];
        ++jump;
      }
      predictions.push_back(p);
      follower.observe(p);
      prev = p;
    }
    out[e] = std::move(predictions);
  }
  return cache_.emplace(x0, std::move(out)).first->second;
}

long long FlowExpertsOracle::best_expert_loss(const Stream& observed) {
  if (observed.empty()) throw SpecError("stream must contain a start state");
  if (observed.size() != static_cast<std::size_t>(horizon_) + 1)
    throw SpecError("stream length must match the expert horizon");
  const auto& all = rollouts(observed[0]);
  long long best = horizon_ + 1;
  for (const auto& predictions : all) {
    long long loss = 0;
    for (int t = 1; t <= horizon_; ++t)
      loss += predictions[static_cast<std::size_t>(t - 1)] !=
              observed[static_cast<std::size_t>(t)];
    best = std::min(best, loss);
  }
  return best;
}

FlowExpertsSession::FlowExpertsSession(std::shared_ptr<FlowExpertsOracle> oracle,
                                       double eta)
    : oracle_(std::move(oracle)), eta_param_(eta) {
  if (!oracle_) throw SpecError("flow experts need an expert pool");
  if (eta < 0) throw SpecError("learning rate must be non-negative");
}

void FlowExpertsSession::reset(const State& x0, int horizon, std::uint64_t seed) {
  if (horizon != oracle_->horizon())
    throw SpecError("flow experts were built for horizon " +
                    std::to_string(oracle_->horizon()));
  rollouts_ = &oracle_->rollouts(x0);
  std::size_t experts = oracle_->expert_count();
  weights_.assign(experts, 1.0 / static_cast<double>(experts));
  eta_ = eta_param_ > 0
             ? eta_param_
             : std::sqrt(2.0 * std::log(static_cast<double>(experts)) /
                         static_cast<double>(std::max(horizon, 1)));
  t_ = 0;
  rng_.emplace(seed);
}

State FlowExpertsSession::predict() {
  std::size_t e = rng_->categorical(weights_);
  return (*rollouts_)[e][static_cast<std::size_t>(t_)];
}

void FlowExpertsSession::observe(const State& x) {
  double decay = std::exp(-eta_);
  double total = 0;
  for (std::size_t e = 0; e < weights_.size(); ++e) {
    if ((*rollouts_)[e][static_cast<std::size_t>(t_)] != x) weights_[e] *= decay;
    total += weights_[e];
  }
  for (double& w : weights_) w /= total;
  ++t_;
}

Json FlowExpertsSession::diagnostics() const {
  return Json{{"experts", oracle_->expert_count()},
              {"eta", eta_},
              {"complexity_bound", oracle_->complexity_bound()},
              {"fanout", oracle_->fanout()}};
}

FixedMemberLearner::FixedMemberLearner(const EnumeratedFamily& family, std::size_t member)
    : family_(family), member_(member) {
  if (member >= family.member_count()) throw SpecError("member index out of range");
}

RandomGuessLearner::RandomGuessLearner(std::size_t state_count)
    : state_count_(state_count) {
  if (state_count == 0) throw SpecError("state count must be positive");
}

void RandomGuessLearner::reset(const State&, int, std::uint64_t seed) {
  rng_.emplace(seed);
}

State RandomGuessLearner::predict() {
  return static_cast<State>(
      rng_->uniform_int(0, static_cast<std::int64_t>(state_count_) - 1));
}

SignedCappedSession::SignedCappedSession(int p, long long window)
    : p_(p), window_(window) {
  if (window < 1) throw SpecError("window must be positive");
  if (p < 0 || p > window) throw SpecError("free-magnitude count must be in [0, w]");
}

void SignedCappedSession::reset(const State& x0, int, std::uint64_t seed) {
  long long v = state_to_signed(x0);
  start_magnitude_ = v < 0 ? -v : v;
  t_ = 0;
  rng_.emplace(seed);
}

State SignedCappedSession::predict() {
  long long source = start_magnitude_ + t_;
  int sign = source < p_ ? rng_->sign() : +1;
  long long magnitude = std::min(source + 1, window_);
  return signed_to_state(sign * magnitude);
}

}  // namespace evolab
