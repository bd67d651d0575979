#include "evolab/adversaries.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "evolab/errors.hpp"

namespace evolab {

namespace {

std::vector<std::size_t> checked_path_members(const EnumeratedFamily& family,
                                              const TrajectoryTree& witness) {
  ShatterResult shatter = is_shattered(witness, family);
  if (!shatter.shattered)
    throw SpecError("tree adversary needs a witness tree the family shatters");
  return std::move(shatter.path_members);
}

std::string path_string(std::uint64_t path, int levels) {
  std::string s;
  s.reserve(static_cast<std::size_t>(levels));
  for (int level = 0; level < levels; ++level)
    s.push_back((path >> level & 1u) ? '1' : '0');
  return s;
}

}  // namespace

TreeAdversaryDeterministic::TreeAdversaryDeterministic(const EnumeratedFamily& family,
                                                       TrajectoryTree witness)
    : family_(family),
      witness_(std::move(witness)),
      path_members_(checked_path_members(family, witness_)) {}

void TreeAdversaryDeterministic::reset(int, std::uint64_t) {
  path_ = 0;
  node_ = 0;
  prev_ = witness_.root();
  member_ = witness_.depth == 0 ? path_members_[0] : 0;
  t_ = 0;
}

State TreeAdversaryDeterministic::start() { return witness_.root(); }

State TreeAdversaryDeterministic::emit(const State& prediction) {
  if (t_ < witness_.depth) {
    State left = witness_.labels[2 * node_ + 1];
    State right = witness_.labels[2 * node_ + 2];
    bool go_right = left != right && prediction == left;
    if (go_right) path_ |= std::uint64_t{1} << t_;
    node_ = 2 * node_ + 1 + (go_right ? 1 : 0);
    prev_ = witness_.labels[node_];
    ++t_;
    if (t_ == witness_.depth) member_ = path_members_[path_];
    return prev_;
  }
  prev_ = family_.apply(member_, prev_);
  ++t_;
  return prev_;
}

Json TreeAdversaryDeterministic::diagnostics() const {
  Json j;
  j["path"] = path_string(path_, std::min(t_, witness_.depth));
  if (t_ >= witness_.depth) j["member"] = family_.member_label(member_);
  return j;
}

TreeAdversaryRandomPath::TreeAdversaryRandomPath(const EnumeratedFamily& family,
                                                 TrajectoryTree witness)
    : family_(family),
      witness_(std::move(witness)),
      path_members_(checked_path_members(family, witness_)) {}

void TreeAdversaryRandomPath::reset(int, std::uint64_t seed) {
  Rng rng(seed);
  path_ = 0;
  for (int level = 0; level < witness_.depth; ++level)
    if (rng.coin()) path_ |= std::uint64_t{1} << level;
  node_ = 0;
  prev_ = witness_.root();
  member_ = path_members_[path_];
  t_ = 0;
}

State TreeAdversaryRandomPath::start() { return witness_.root(); }

State TreeAdversaryRandomPath::emit(const State&) {
  if (t_ < witness_.depth) {
    node_ = 2 * node_ + 1 + (path_ >> t_ & 1u);
    prev_ = witness_.labels[node_];
    ++t_;
    return prev_;
  }
  prev_ = family_.apply(member_, prev_);
  ++t_;
  return prev_;
}

Json TreeAdversaryRandomPath::diagnostics() const {
  Json j;
  j["path"] = path_string(path_, witness_.depth);
  j["member"] = family_.member_label(member_);
  return j;
}

BooleanForcingAdversary::BooleanForcingAdversary(int n, Kind kind) : n_(n), kind_(kind) {
  if (n < 1 || n > 3) throw SpecError("boolean forcing adversary supports n in [1, 3]");
}

void BooleanForcingAdversary::reset(int, std::uint64_t) {
  t_ = 0;
  prev_ = 0;
  stream_.clear();
  used_coords_ = 0;
  removed_.clear();
  rows_.clear();
  resolved_ = false;
}

State BooleanForcingAdversary::start() {
  State x0 = kind_ == Kind::mod2 ? State{1} : static_cast<State>((State{1} << n_) - 1);
  stream_.assign(1, x0);
  prev_ = x0;
  used_coords_ = kind_ == Kind::mod2 ? State{1} : State{0};
  t_ = 0;
  return x0;
}

State BooleanForcingAdversary::emit(const State& prediction) {
  if (t_ >= n_) {
    prev_ = apply_rows(prev_);
    ++t_;
    return prev_;
  }

  std::vector<State> candidates;
  if (kind_ == Kind::mod2) {
    if (t_ < n_ - 1) {
      int unused = n_ - 1 - t_;
      if (unused >= 2) {
        for (int c = 0; c < n_; ++c)
          if (!(used_coords_ >> c & 1u)) candidates.push_back(State{1} << c);
      } else {
        int c = 0;
        while (used_coords_ >> c & 1u) ++c;
        State e = State{1} << c;
        candidates = {e, static_cast<State>(e ^ stream_[0])};
      }
    } else {
      for (State s = 0; s < (State{1} << n_); ++s) candidates.push_back(s);
    }
  } else {
    if (t_ < n_ - 1) {
      for (int c = n_ - 1; c >= 0; --c)
        if (prev_ >> c & 1u) candidates.push_back(prev_ & ~(State{1} << c));
    } else {
      candidates = {State{0}, prev_};
    }
  }

  State next = candidates[0];
  for (State c : candidates)
    if (c != prediction) {
      next = c;
      break;
    }

  if (kind_ == Kind::mod2) {
    used_coords_ |= next;
  } else if (t_ < n_ - 1) {
    removed_.push_back(std::countr_zero(static_cast<unsigned>(prev_ ^ next)));
  }
  stream_.push_back(next);
  prev_ = next;
  ++t_;
  if (t_ == n_) resolve();
  return next;
}

void BooleanForcingAdversary::resolve() {
  rows_.assign(static_cast<std::size_t>(n_), 0);
  if (kind_ == Kind::mod2) {
    std::vector<std::uint64_t> aug(static_cast<std::size_t>(n_));
    for (int t = 0; t < n_; ++t)
      aug[t] = stream_[t] | (static_cast<std::uint64_t>(stream_[t + 1]) << n_);
    std::vector<int> pivot_row(static_cast<std::size_t>(n_), -1);
    int rank = 0;
    for (int col = 0; col < n_; ++col) {
      int pr = -1;
      for (int r = rank; r < n_; ++r)
        if (aug[r] >> col & 1u) {
          pr = r;
          break;
        }
      if (pr < 0) continue;
      std::swap(aug[rank], aug[pr]);
      for (int r = 0; r < n_; ++r)
        if (r != rank && (aug[r] >> col & 1u)) aug[r] ^= aug[rank];
      pivot_row[col] = rank;
      ++rank;
    }
    if (rank < n_) throw SpecError("forcing stream lost full rank");
    for (int col = 0; col < n_; ++col) {
      std::uint64_t rhs = aug[pivot_row[col]] >> n_;
      for (int c = 0; c < n_; ++c)
        if (rhs >> c & 1u) rows_[c] |= State{1} << col;
    }
  } else {
    State cum = 0;
    for (int c : removed_) {
      rows_[c] = cum;
      cum |= State{1} << c;
    }
    int survivor = std::countr_zero(static_cast<unsigned>(~cum & ((State{1} << n_) - 1)));
    rows_[survivor] = cum;
    if (stream_.back() != 0) rows_[survivor] |= State{1} << survivor;
  }
  resolved_ = true;
}

State BooleanForcingAdversary::apply_rows(State x) const {
  State y = 0;
  for (int c = 0; c < n_; ++c) {
    State dot = rows_[c] & x;
    bool bit = kind_ == Kind::mod2 ? (std::popcount(dot) & 1) != 0 : dot != 0;
    if (bit) y |= State{1} << c;
  }
  return y;
}

std::string BooleanForcingAdversary::id() const {
  return kind_ == Kind::mod2 ? "bool_forcing_mod2" : "bool_forcing_threshold";
}

std::optional<std::uint64_t> BooleanForcingAdversary::member_index() const {
  if (!resolved_) return std::nullopt;
  std::uint64_t m = 0;
  for (int c = 0; c < n_; ++c) m |= static_cast<std::uint64_t>(rows_[c]) << (c * n_);
  return m;
}

Json BooleanForcingAdversary::diagnostics() const {
  Json j;
  j["variant"] = kind_ == Kind::mod2 ? "mod2" : "threshold";
  if (resolved_) {
    j["matrix_index"] = *member_index();
    std::string bits;
    for (int c = 0; c < n_; ++c)
      for (int col = 0; col < n_; ++col)
        bits.push_back((rows_[c] >> col & 1u) ? '1' : '0');
    j["matrix"] = bits;
  }
  return j;
}

LittlestoneBlockAdversary::LittlestoneBlockAdversary(const EnumeratedFamily& family,
                                                     LittlestoneTree witness)
    : family_(family), witness_(std::move(witness)) {
  if (witness_.depth < 1)
    throw SpecError("block adversary needs a mistake tree of depth >= 1");
  std::size_t nodes = TrajectoryTree::node_count(witness_.depth);
  if (witness_.instances.size() != nodes || witness_.edge_labels.size() != nodes)
    throw SpecError("mistake tree arrays must cover every node");
  if (witness_.path_members.size() != (std::size_t{1} << witness_.depth))
    throw SpecError("mistake tree must carry a member per path");
  std::size_t internal = (std::size_t{1} << witness_.depth) - 1;
  for (std::size_t i = 0; i < internal; ++i)
    if (witness_.edge_labels[2 * i + 1] == witness_.edge_labels[2 * i + 2])
      throw SpecError("mistake tree edges out of each internal node must differ");
  for (std::uint64_t path = 0; path < (std::uint64_t{1} << witness_.depth); ++path) {
    std::vector<State> seen;
    std::size_t node = 0;
    for (int level = 0; level < witness_.depth; ++level) {
      State instance = witness_.instances[node];
      if (std::find(seen.begin(), seen.end(), instance) != seen.end())
        throw SpecError(
            "mistake tree repeats an instance along a path; the block stream "
            "needs distinct probes");
      seen.push_back(instance);
      node = 2 * node + 1 + (path >> level & 1u);
    }
  }
}

void LittlestoneBlockAdversary::reset(int horizon, std::uint64_t seed) {
  r_ = (witness_.depth + 2) / 3;
  if (horizon != 2 * r_ - 1)
    throw SpecError("block adversary plays horizon 2r-1; this witness has r = " +
                    std::to_string(r_));
  Rng rng(seed);
  path_ = 0;
  for (int level = 0; level < witness_.depth; ++level)
    if (rng.coin()) path_ |= std::uint64_t{1} << level;
  blocks_.assign(1, 1);
  for (int i = 1; i < r_; ++i)
    blocks_.push_back(static_cast<int>(rng.uniform_int(3 * i - 1, 3 * i + 1)));
  emissions_.clear();
  for (int i = 0; i < r_; ++i) {
    emissions_.push_back(edge_label(blocks_[i]));
    if (i + 1 < r_) emissions_.push_back(node_instance(blocks_[i + 1] - 1));
  }
  x0_ = witness_.instances[0];
  member_ = witness_.path_members[path_];
  member_loss_ = 0;
  State prev = x0_;
  for (State e : emissions_) {
    member_loss_ += family_.apply(member_, prev) != e;
    prev = e;
  }
  t_ = 0;
}

State LittlestoneBlockAdversary::node_instance(int depth) const {
  std::size_t node = 0;
  for (int level = 0; level < depth; ++level) node = 2 * node + 1 + (path_ >> level & 1u);
  return witness_.instances[node];
}

State LittlestoneBlockAdversary::edge_label(int depth) const {
  std::size_t node = 0;
  for (int level = 0; level < depth; ++level) node = 2 * node + 1 + (path_ >> level & 1u);
  return witness_.edge_labels[node];
}

State LittlestoneBlockAdversary::start() {
  t_ = 0;
  return x0_;
}

State LittlestoneBlockAdversary::emit(const State&) { return emissions_[t_++]; }

Json LittlestoneBlockAdversary::diagnostics() const {
  Json j;
  j["r"] = r_;
  j["blocks"] = blocks_;
  j["path"] = path_string(path_, witness_.depth);
  j["witness_member"] = family_.member_label(member_);
  j["witness_loss"] = member_loss_;
  return j;
}

TwoFunctionAdversary::TwoFunctionAdversary(const EnumeratedFamily& family, std::size_t f1,
                                           std::size_t f2)
    : family_(family), f1_(f1), f2_(f2) {
  if (f1 >= family.member_count() || f2 >= family.member_count())
    throw SpecError("two-function adversary member index out of range");
  if (family.table(f1) == family.table(f2))
    throw SpecError("two-function adversary needs members that disagree somewhere");
  State n = static_cast<State>(family.state_count());
  for (State x = 0; x < n; ++x)
    if (family.apply(f1, x) != family.apply(f2, x)) {
      x0_ = x;
      break;
    }
}

void TwoFunctionAdversary::reset(int, std::uint64_t seed) {
  rng_.emplace(seed);
  prev_ = x0_;
}

State TwoFunctionAdversary::start() {
  prev_ = x0_;
  return x0_;
}

State TwoFunctionAdversary::emit(const State&) {
  State a = family_.apply(f1_, prev_);
  State b = family_.apply(f2_, prev_);
  State next;
  if (a == b) {
    next = (a == x0_ || rng_->coin()) ? x0_ : a;
  } else {
    next = rng_->coin() ? a : b;
  }
  prev_ = next;
  return next;
}

Json TwoFunctionAdversary::diagnostics() const {
  Json j;
  j["f1"] = family_.member_label(f1_);
  j["f2"] = family_.member_label(f2_);
  j["x0"] = family_.space().label(x0_);
  return j;
}

MarkovianTightnessAdversary::MarkovianTightnessAdversary(int d, int k) : d_(d), k_(k) {
  if (d < 1 || d > 12) throw SpecError("tightness adversary supports d in [1, 12]");
  if (k < 1 || k % 2 == 0) throw SpecError("tightness adversary needs odd k >= 1");
}

void MarkovianTightnessAdversary::reset(int horizon, std::uint64_t seed) {
  if (horizon != 2 * k_ * d_ - 1)
    throw SpecError("tightness adversary plays horizon 2kd-1 = " +
                    std::to_string(2 * k_ * d_ - 1));
  Rng rng(seed);
  emissions_.clear();
  for (int i = 1; i <= d_; ++i) {
    for (int j = 1; j <= k_; ++j) {
      bool plus = rng.coin();
      emissions_.push_back(static_cast<State>(d_ + 2 * (i - 1) + (plus ? 0 : 1)));
      if (j < k_) emissions_.push_back(static_cast<State>(i - 1));
    }
    if (i < d_) emissions_.push_back(static_cast<State>(i));
  }
  t_ = 0;
}

State MarkovianTightnessAdversary::start() {
  t_ = 0;
  return 0;
}

State MarkovianTightnessAdversary::emit(const State&) { return emissions_[t_++]; }

Json MarkovianTightnessAdversary::diagnostics() const {
  Json j;
  j["d"] = d_;
  j["k"] = k_;
  return j;
}

SwitchingTightnessAdversary::SwitchingTightnessAdversary(int p, int k, long long window)
    : p_(p), k_(k), window_(window) {
  if (p < 0) throw SpecError("switching adversary needs p >= 0");
  if (k < 1 || k % 2 == 0) throw SpecError("switching adversary needs odd k >= 1");
  if (window < 1) throw SpecError("switching adversary needs a positive window");
}

void SwitchingTightnessAdversary::reset(int horizon, std::uint64_t seed) {
  if (horizon != k_ * (p_ + 1))
    throw SpecError("switching adversary plays horizon k(p+1) = " +
                    std::to_string(k_ * (p_ + 1)));
  if (horizon > window_)
    throw SpecError("switching adversary horizon exceeds the state window");
  rng_.emplace(seed);
  t_ = 0;
}

State SwitchingTightnessAdversary::start() {
  t_ = 0;
  return signed_to_state(0);
}

State SwitchingTightnessAdversary::emit(const State&) {
  ++t_;
  return signed_to_state(static_cast<long long>(rng_->sign()) * t_);
}

Json SwitchingTightnessAdversary::diagnostics() const {
  Json j;
  j["p"] = p_;
  j["k"] = k_;
  j["window"] = window_;
  return j;
}

}  // namespace evolab
