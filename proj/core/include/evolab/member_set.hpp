#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace evolab {

// Fixed-width bitset over family member indices (one bit per member). The
// width is set at construction; binary operations require equal widths.
class MemberSet {
 public:
  static constexpr std::size_t npos = ~std::size_t{0};

  MemberSet() = default;

  explicit MemberSet(std::size_t member_count, bool all = false)
      : size_(member_count), words_((member_count + 63) / 64, 0) {
    if (all) {
      for (auto& w : words_) w = ~std::uint64_t{0};
      trim();
    }
  }

  std::size_t universe_size() const { return size_; }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }

  bool none() const { return !any(); }

  bool test(std::size_t i) const {
    return i < size_ && (words_[i / 64] >> (i % 64)) & 1u;
  }

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }

  MemberSet& operator&=(const MemberSet& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
    return *this;
  }

  friend MemberSet operator&(MemberSet a, const MemberSet& b) {
    a &= b;
    return a;
  }

  bool operator==(const MemberSet&) const = default;

  // Lowest set index, or npos when empty.
  std::size_t lowest() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return npos;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        fn(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  std::size_t hash() const {
    std::uint64_t h = 0x9E3779B97F4A7C15ull ^ size_;
    for (auto w : words_) {
      h ^= w + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  void trim() {
    if (size_ % 64 != 0 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct MemberSetHash {
  std::size_t operator()(const MemberSet& s) const { return s.hash(); }
};

}  // namespace evolab
