#include "evolab/state_space.hpp"

#include <numeric>

#include "evolab/errors.hpp"

namespace evolab {

StateSpace::StateSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw SpecError("state space must be nonempty");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) throw SpecError("state labels must be nonempty");
    auto [it, inserted] = index_.emplace(labels_[i], static_cast<State>(i));
    if (!inserted) throw SpecError("duplicate state label '" + labels_[i] + "'");
  }
}

const std::string& StateSpace::label(State x) const {
  if (x >= labels_.size()) throw SpecError("state index out of range");
  return labels_[x];
}

std::optional<State> StateSpace::index(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

State StateSpace::require(const std::string& label) const {
  auto idx = index(label);
  if (!idx) throw SpecError("unknown state label '" + label + "'");
  return *idx;
}

State signed_to_state(long long value) {
  if (value == 0) return 0;
  if (value > 0) return static_cast<State>(2 * value - 1);
  return static_cast<State>(-2 * value);
}

long long state_to_signed(State x) {
  if (x == 0) return 0;
  if (x % 2 == 1) return (static_cast<long long>(x) + 1) / 2;
  return -(static_cast<long long>(x) / 2);
}

std::vector<std::string> signed_labels(long long window) {
  if (window < 0) throw SpecError("window must be non-negative");
  std::vector<std::string> labels(static_cast<std::size_t>(2 * window + 1));
  for (long long v = -window; v <= window; ++v)
    labels[signed_to_state(v)] = std::to_string(v);
  return labels;
}

State bits_to_state(const std::vector<int>& bits) {
  State x = 0;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) x |= State{1} << i;
  return x;
}

std::vector<int> state_to_bits(State x, int n) {
  std::vector<int> bits(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) bits[static_cast<std::size_t>(i)] = (x >> i) & 1u;
  return bits;
}

std::vector<std::string> bitvec_labels(int n) {
  if (n < 1 || n > 20) throw SpecError("bit-vector dimension out of range");
  std::vector<std::string> labels(std::size_t{1} << n);
  for (State x = 0; x < labels.size(); ++x) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i)
      if ((x >> i) & 1u) s[static_cast<std::size_t>(i)] = '1';
    labels[x] = std::move(s);
  }
  return labels;
}

std::vector<std::string> fraction_labels(int m) {
  if (m < 1) throw SpecError("grid resolution must be positive");
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(m) + 1);
  for (int j = 0; j <= m; ++j) {
    int g = std::gcd(j, m);
    int num = j / g, den = m / g;
    if (den == 1)
      labels.push_back(std::to_string(num));
    else
      labels.push_back(std::to_string(num) + "/" + std::to_string(den));
  }
  return labels;
}

}  // namespace evolab
