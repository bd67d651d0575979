#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace evolab {

// splitmix64 finalizer, used to derive statistically independent child seeds
// from a base seed and a lane number. Replica i of a Monte Carlo run uses
// lane 2*i for the learner and lane 2*i+1 for the adversary, so results do not
// depend on how replicas are scheduled across threads.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t lane);

// Seeded generator with hand-rolled draw primitives. std::mt19937_64's output
// sequence is pinned by the standard, but the std distribution adaptors are
// not; doing the mapping ourselves keeps reruns byte-identical across
// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [lo, hi], both inclusive; masked rejection sampling.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  // +1 or -1 with equal probability.
  int sign() { return (eng_() & 1u) ? +1 : -1; }

  bool coin() { return (eng_() & 1u) != 0; }

  // Index sampled proportionally to non-negative weights (not necessarily
  // normalized). A degenerate weight vector falls back to index 0.
  std::size_t categorical(const std::vector<double>& weights);

 private:
  std::mt19937_64 eng_;
};

}  // namespace evolab
