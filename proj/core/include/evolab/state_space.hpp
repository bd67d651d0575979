#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace evolab {

// Index into a finite state space.
using State = std::uint32_t;

// Finite state space with printable labels; State values index into it.
// Labels must be distinct and nonempty.
class StateSpace {
 public:
  StateSpace() = default;
  explicit StateSpace(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(State x) const;
  std::optional<State> index(const std::string& label) const;
  State require(const std::string& label) const;  // SpecError on unknown label

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, State> index_;
};

// Sign-magnitude codec for integer grids {-w, ..., w}:
// 0 -> 0, +m -> 2m-1, -m -> 2m for m >= 1.
State signed_to_state(long long value);
long long state_to_signed(State x);
std::vector<std::string> signed_labels(long long window);

// Bit-vector codec for {0,1}^n: coordinate i (1-based) is bit i-1 of the index.
// The label lists coordinates in order, e.g. "10" for x1=1, x2=0.
State bits_to_state(const std::vector<int>& bits);
std::vector<int> state_to_bits(State x, int n);
std::vector<std::string> bitvec_labels(int n);

// Reduced-fraction labels for the grid {0, 1/m, 2/m, ..., 1}.
std::vector<std::string> fraction_labels(int m);

}  // namespace evolab
