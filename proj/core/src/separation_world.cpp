#include "evolab/separation_world.hpp"

#include <algorithm>
#include <cstdlib>

#include "evolab/errors.hpp"

namespace evolab {

SeparationWorld::SeparationWorld(int m, long long zmax) : m_(m), zmax_(zmax) {
  if (m < 1 || m > 60) throw SpecError("separation world supports m in [1, 60]");
  if (zmax < 1) throw SpecError("separation world needs zmax >= 1");
}

int SeparationWorld::cyclic_index(long long magnitude) const {
  return static_cast<int>((magnitude - 1) % m_) + 1;
}

void SeparationWorld::check_state(const SepState& s) const {
  if (s.theta > all_plus()) throw SpecError("state mask has bits beyond index m");
  if (std::llabs(s.z) > zmax_) throw SpecError("state counter exceeds zmax");
}

SepState SeparationWorld::apply(std::uint64_t member, const SepState& x) const {
  if (std::llabs(x.z) >= zmax_) return x;
  long long mag = std::llabs(x.z) + 1;
  int c = cyclic_index(mag);
  bool plus = (member >> (c - 1)) & 1u;
  SepState y;
  y.z = plus ? mag : -mag;
  y.theta = mag % 3 == 0 ? member : all_plus();
  return y;
}

std::vector<SepState> SeparationWorld::flow(std::uint64_t member, SepState x0, int T) const {
  std::vector<SepState> stream;
  stream.reserve(static_cast<std::size_t>(T) + 1);
  stream.push_back(x0);
  for (int t = 1; t <= T; ++t) stream.push_back(apply(member, stream.back()));
  return stream;
}

std::string SeparationWorld::label(const SepState& s) const {
  std::string out;
  out.reserve(static_cast<std::size_t>(m_) + 4);
  for (int j = 0; j < m_; ++j) out.push_back((s.theta >> j & 1u) ? '+' : '-');
  out.push_back(';');
  out += std::to_string(s.z);
  return out;
}

SepState SeparationWorld::parse(const std::string& text) const {
  std::size_t sep = text.find(';');
  if (sep == std::string::npos || sep != static_cast<std::size_t>(m_))
    throw IoError("state '" + text + "' must be " + std::to_string(m_) +
                  " sign characters, ';', then the counter");
  SepState s;
  for (int j = 0; j < m_; ++j) {
    char ch = text[static_cast<std::size_t>(j)];
    if (ch == '+')
      s.theta |= std::uint64_t{1} << j;
    else if (ch != '-')
      throw IoError("state '" + text + "' has a sign character other than +/-");
  }
  try {
    s.z = std::stoll(text.substr(sep + 1));
  } catch (const std::exception&) {
    throw IoError("state '" + text + "' has a malformed counter");
  }
  if (std::llabs(s.z) > zmax_)
    throw IoError("state '" + text + "' has a counter beyond zmax");
  return s;
}

std::string SeparationWorld::member_label(std::uint64_t member) const {
  std::string out = "signs=";
  for (int j = 0; j < m_; ++j) out.push_back((member >> j & 1u) ? '+' : '-');
  return out;
}

long long SeparationWorld::markovian_loss(std::uint64_t member,
                                          const std::vector<SepState>& stream) const {
  long long loss = 0;
  for (std::size_t t = 1; t < stream.size(); ++t)
    loss += !(apply(member, stream[t - 1]) == stream[t]);
  return loss;
}

long long SeparationWorld::flow_loss(std::uint64_t member,
                                     const std::vector<SepState>& stream) const {
  long long loss = 0;
  SepState x = stream[0];
  for (std::size_t t = 1; t < stream.size(); ++t) {
    x = apply(member, x);
    loss += !(x == stream[t]);
  }
  return loss;
}

namespace {

ComparatorOutcome best_candidate(const SeparationWorld& world,
                                 std::vector<std::uint64_t> candidates,
                                 const std::function<long long(std::uint64_t)>& loss) {
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  ComparatorOutcome best;
  bool first = true;
  for (std::uint64_t cand : candidates) {
    long long l = loss(cand);
    if (first || l < best.loss) {
      best.loss = l;
      best.member = world.member_label(cand);
      first = false;
    }
  }
  return best;
}

}  // namespace

ComparatorOutcome SeparationWorld::markovian_comparator(
    const std::vector<SepState>& stream) const {
  if (stream.empty()) throw SpecError("stream must contain a start state");
  for (const SepState& s : stream) check_state(s);
  std::vector<std::uint64_t> candidates;
  std::vector<long long> plus_votes(static_cast<std::size_t>(m_), 0);
  std::vector<long long> minus_votes(static_cast<std::size_t>(m_), 0);
  for (std::size_t t = 1; t < stream.size(); ++t) {
    const SepState& p = stream[t - 1];
    const SepState& s = stream[t];
    if (std::llabs(p.z) >= zmax_) continue;
    long long mag = std::llabs(p.z) + 1;
    if (mag % 3 == 0) {
      candidates.push_back(s.theta);
    } else if (s.theta == all_plus() && std::llabs(s.z) == mag) {
      int c = cyclic_index(mag);
      ++(s.z > 0 ? plus_votes : minus_votes)[c - 1];
    }
  }
  std::uint64_t star = 0;
  for (int j = 0; j < m_; ++j)
    if (plus_votes[j] > minus_votes[j]) star |= std::uint64_t{1} << j;
  candidates.push_back(star);
  return best_candidate(*this, std::move(candidates),
                        [&](std::uint64_t cand) { return markovian_loss(cand, stream); });
}

ComparatorOutcome SeparationWorld::flow_comparator(const std::vector<SepState>& stream) const {
  if (stream.empty()) throw SpecError("stream must contain a start state");
  for (const SepState& s : stream) check_state(s);
  long long z0 = std::llabs(stream[0].z);
  long long T = static_cast<long long>(stream.size()) - 1;
  if (z0 + T > zmax_)
    throw SpecError("flow comparator needs |z0|+T <= zmax so member flows stay unabsorbed");
  std::vector<std::uint64_t> candidates;
  std::vector<long long> plus_votes(static_cast<std::size_t>(m_), 0);
  std::vector<long long> minus_votes(static_cast<std::size_t>(m_), 0);
  for (long long t = 1; t <= T; ++t) {
    const SepState& s = stream[static_cast<std::size_t>(t)];
    long long mag = z0 + t;
    if (mag % 3 == 0) {
      candidates.push_back(s.theta);
    } else if (s.theta == all_plus() && std::llabs(s.z) == mag) {
      int c = cyclic_index(mag);
      ++(s.z > 0 ? plus_votes : minus_votes)[c - 1];
    }
  }
  std::uint64_t star = 0;
  for (int j = 0; j < m_; ++j)
    if (plus_votes[j] > minus_votes[j]) star |= std::uint64_t{1} << j;
  candidates.push_back(star);
  return best_candidate(*this, std::move(candidates),
                        [&](std::uint64_t cand) { return flow_loss(cand, stream); });
}

RealizabilityOutcome SeparationWorld::realizability(const std::vector<SepState>& stream) const {
  if (stream.empty()) throw SpecError("stream must contain a start state");
  for (const SepState& s : stream) check_state(s);
  RealizabilityOutcome out;
  std::vector<int> required(static_cast<std::size_t>(m_), 0);
  std::optional<std::uint64_t> forced;
  for (std::size_t t = 1; t < stream.size(); ++t) {
    const SepState& p = stream[t - 1];
    const SepState& s = stream[t];
    if (std::llabs(p.z) >= zmax_) {
      if (!(s == p)) return out;
      continue;
    }
    long long mag = std::llabs(p.z) + 1;
    if (std::llabs(s.z) != mag) return out;
    int c = cyclic_index(mag);
    int sign = s.z > 0 ? +1 : -1;
    if (required[c - 1] != 0 && required[c - 1] != sign) return out;
    required[c - 1] = sign;
    if (mag % 3 == 0) {
      if (forced && *forced != s.theta) return out;
      forced = s.theta;
    } else if (s.theta != all_plus()) {
      return out;
    }
  }
  if (forced) {
    for (int j = 0; j < m_; ++j) {
      int sign = (*forced >> j & 1u) ? +1 : -1;
      if (required[j] != 0 && required[j] != sign) return out;
    }
    out.realizable = true;
    out.witnesses = 1;
    out.member = member_label(*forced);
    return out;
  }
  std::uint64_t lowest = 0;
  int free_indices = 0;
  for (int j = 0; j < m_; ++j) {
    if (required[j] == +1) lowest |= std::uint64_t{1} << j;
    if (required[j] == 0) ++free_indices;
  }
  out.realizable = true;
  out.witnesses = std::size_t{1} << free_indices;
  out.member = member_label(lowest);
  return out;
}

SeparationRealizableSession::SeparationRealizableSession(const SeparationWorld& world)
    : world_(world) {}

void SeparationRealizableSession::reset(const SepState& x0, int, std::uint64_t) {
  sigma_hat_ = world_.all_plus();
  if (x0.theta != world_.all_plus()) sigma_hat_ = x0.theta;
  prev_ = x0;
}

SepState SeparationRealizableSession::predict() { return world_.apply(sigma_hat_, prev_); }

void SeparationRealizableSession::observe(const SepState& x) {
  if (x.theta != world_.all_plus()) sigma_hat_ = x.theta;
  prev_ = x;
}

Json SeparationRealizableSession::diagnostics() const {
  Json j;
  j["sigma_hat"] = world_.member_label(sigma_hat_);
  return j;
}

SeparationFlowAdversary::SeparationFlowAdversary(const SeparationWorld& world)
    : world_(world) {}

void SeparationFlowAdversary::reset(int horizon, std::uint64_t seed) {
  if (horizon > world_.zmax())
    throw SpecError("separation flow adversary needs horizon <= zmax");
  rng_.emplace(seed);
  t_ = 0;
}

SepState SeparationFlowAdversary::start() {
  t_ = 0;
  return SepState{world_.all_plus(), 0};
}

SepState SeparationFlowAdversary::emit(const SepState&) {
  ++t_;
  return SepState{world_.all_plus(), static_cast<long long>(rng_->sign()) * t_};
}

Json SeparationFlowAdversary::diagnostics() const {
  Json j;
  j["m"] = world_.m();
  j["zmax"] = world_.zmax();
  return j;
}

GameContext<SepState> separation_context(const SeparationWorld& world) {
  GameContext<SepState> ctx;
  ctx.label = [&world](const SepState& s) { return world.label(s); };
  ctx.equal = [](const SepState& a, const SepState& b) { return a == b; };
  ctx.markovian = [&world](const std::vector<SepState>& stream) {
    return world.markovian_comparator(stream);
  };
  ctx.flow = [&world](const std::vector<SepState>& stream) {
    return world.flow_comparator(stream);
  };
  ctx.realizability = [&world](const std::vector<SepState>& stream) {
    return world.realizability(stream);
  };
  return ctx;
}

}  // namespace evolab
