#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "overlapx/mask.hpp"

namespace overlapx::detail {

using u128 = unsigned __int128;

inline u128 key_of(const SubsetMask& s) {
  return (static_cast<u128>(s.hi()) << 64) | s.lo();
}

inline SubsetMask mask_of(int n, u128 key) {
  return SubsetMask::from_words(n, static_cast<std::uint64_t>(key),
                                static_cast<std::uint64_t>(key >> 64));
}

struct U128Hash {
  std::size_t operator()(u128 v) const {
    std::uint64_t x = static_cast<std::uint64_t>(v) ^
                      (static_cast<std::uint64_t>(v >> 64) * 0x9e3779b97f4a7c15ull);
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdull;
    x ^= x >> 33;
    return static_cast<std::size_t>(x);
  }
};

// Presence bitset over the subset lattice of a small ground set; the
// low mask word is the index. Collecting returns canonical order.
class LatticeBitset {
 public:
  explicit LatticeBitset(int n) : words_(((std::size_t{1} << n) + 63) / 64, 0) {}

  bool contains(std::uint64_t v) const {
    return (words_[v >> 6] >> (v & 63)) & 1;
  }

  // Returns true when the value was newly inserted.
  bool insert(std::uint64_t v) {
    std::uint64_t& w = words_[v >> 6];
    std::uint64_t bit = 1ull << (v & 63);
    if (w & bit) return false;
    w |= bit;
    return true;
  }

  std::vector<SubsetMask> collect(int n) const {
    std::vector<SubsetMask> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        int b = std::countr_zero(bits);
        bits &= bits - 1;
        out.push_back(SubsetMask::from_words(
            n, (static_cast<std::uint64_t>(w) << 6) | static_cast<unsigned>(b), 0));
      }
    }
    return out;
  }

 private:
  std::vector<std::uint64_t> words_;
};

inline constexpr int kLatticeBitsetMaxN = 24;

}  // namespace overlapx::detail
