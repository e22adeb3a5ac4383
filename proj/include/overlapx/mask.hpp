#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <vector>

#include "overlapx/errors.hpp"

namespace overlapx {

// Maximum supported ground size: two machine words per mask.
inline constexpr int kMaxGroundSize = 128;

// One subset of the ground set [n] = {1, ..., n} as a fixed-width bit
// vector. Element i occupies bit i-1; bits at positions >= n are zero.
// Immutable value type; the total order used everywhere is the numeric
// value of the bit vector.
class SubsetMask {
 public:
  SubsetMask() = default;

  explicit SubsetMask(int ground_size) : n_(checked_ground(ground_size)) {}

  static SubsetMask empty_set(int ground_size) { return SubsetMask(ground_size); }

  static SubsetMask full_set(int ground_size) {
    SubsetMask s(ground_size);
    if (ground_size <= 64) {
      s.lo_ = ground_size == 64 ? ~0ull : low_bits(ground_size);
    } else {
      s.lo_ = ~0ull;
      s.hi_ = ground_size == 128 ? ~0ull : low_bits(ground_size - 64);
    }
    return s;
  }

  static SubsetMask of(int ground_size, std::initializer_list<int> elements) {
    SubsetMask s(ground_size);
    for (int e : elements) s = s.with(e);
    return s;
  }

  static SubsetMask from_words(int ground_size, std::uint64_t lo, std::uint64_t hi) {
    SubsetMask s(ground_size);
    s.lo_ = lo;
    s.hi_ = hi;
    if ((s.lo_ | s.hi_) != 0 && !s.subset_of(full_set(ground_size)))
      throw PreconditionError("mask has bits beyond its ground size");
    return s;
  }

  int ground_size() const { return n_; }
  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return hi_; }

  int cardinality() const { return std::popcount(lo_) + std::popcount(hi_); }
  bool empty() const { return (lo_ | hi_) == 0; }

  bool contains(int element) const {
    check_element(element);
    return element <= 64 ? (lo_ >> (element - 1)) & 1
                         : (hi_ >> (element - 65)) & 1;
  }

  SubsetMask with(int element) const {
    check_element(element);
    SubsetMask s = *this;
    if (element <= 64)
      s.lo_ |= 1ull << (element - 1);
    else
      s.hi_ |= 1ull << (element - 65);
    return s;
  }

  SubsetMask without(int element) const {
    check_element(element);
    SubsetMask s = *this;
    if (element <= 64)
      s.lo_ &= ~(1ull << (element - 1));
    else
      s.hi_ &= ~(1ull << (element - 65));
    return s;
  }

  SubsetMask intersect(const SubsetMask& o) const {
    SubsetMask s = same_ground(o);
    s.lo_ = lo_ & o.lo_;
    s.hi_ = hi_ & o.hi_;
    return s;
  }

  SubsetMask unite(const SubsetMask& o) const {
    SubsetMask s = same_ground(o);
    s.lo_ = lo_ | o.lo_;
    s.hi_ = hi_ | o.hi_;
    return s;
  }

  SubsetMask minus(const SubsetMask& o) const {
    SubsetMask s = same_ground(o);
    s.lo_ = lo_ & ~o.lo_;
    s.hi_ = hi_ & ~o.hi_;
    return s;
  }

  SubsetMask complement() const {
    SubsetMask full = full_set(n_);
    return full.minus(*this);
  }

  bool subset_of(const SubsetMask& o) const {
    return (lo_ & ~o.lo_) == 0 && (hi_ & ~o.hi_) == 0;
  }

  int intersection_size(const SubsetMask& o) const {
    return std::popcount(lo_ & o.lo_) + std::popcount(hi_ & o.hi_);
  }

  bool intersects(const SubsetMask& o) const {
    return (lo_ & o.lo_) | (hi_ & o.hi_);
  }

  // Smallest element, 0 when empty.
  int min_element() const {
    if (lo_) return std::countr_zero(lo_) + 1;
    if (hi_) return std::countr_zero(hi_) + 65;
    return 0;
  }

  // Largest element, 0 when empty.
  int max_element() const {
    if (hi_) return 128 - std::countl_zero(hi_);
    if (lo_) return 64 - std::countl_zero(lo_);
    return 0;
  }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(cardinality()));
    for_each_element([&](int e) { out.push_back(e); });
    return out;
  }

  template <typename Fn>
  void for_each_element(Fn&& fn) const {
    std::uint64_t w = lo_;
    while (w) {
      fn(std::countr_zero(w) + 1);
      w &= w - 1;
    }
    w = hi_;
    while (w) {
      fn(std::countr_zero(w) + 65);
      w &= w - 1;
    }
  }

  friend bool operator==(const SubsetMask& a, const SubsetMask& b) {
    return a.n_ == b.n_ && a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

  // Numeric order of the bit vector; ground size first so the order is
  // total across mixed collections.
  friend std::strong_ordering operator<=>(const SubsetMask& a, const SubsetMask& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    if (auto c = a.hi_ <=> b.hi_; c != 0) return c;
    return a.lo_ <=> b.lo_;
  }

 private:
  static int checked_ground(int n) {
    if (n < 0 || n > kMaxGroundSize)
      throw PreconditionError("ground size must be in [0, 128]");
    return n;
  }

  static std::uint64_t low_bits(int k) { return (1ull << k) - 1; }

  void check_element(int element) const {
    if (element < 1 || element > n_)
      throw PreconditionError("element out of range 1..n");
  }

  SubsetMask same_ground(const SubsetMask& o) const {
    if (n_ != o.n_) throw PreconditionError("ground-size mismatch");
    return SubsetMask(n_);
  }

  std::uint64_t lo_ = 0;
  std::uint64_t hi_ = 0;
  std::int32_t n_ = 0;
};

// All subsets of `support`, visited in descending numeric order starting
// from the full support, ending with the empty set.
template <typename Fn>
void for_each_submask(const SubsetMask& support, Fn&& fn) {
  unsigned __int128 m = (static_cast<unsigned __int128>(support.hi()) << 64) | support.lo();
  unsigned __int128 s = m;
  int n = support.ground_size();
  for (;;) {
    fn(SubsetMask::from_words(n, static_cast<std::uint64_t>(s),
                              static_cast<std::uint64_t>(s >> 64)));
    if (s == 0) break;
    s = (s - 1) & m;
  }
}

// All k-element subsets of [n] in lexicographic order of the ascending
// element sequence: (1,2,..,k), (1,2,..,k-1,k+1), ...
template <typename Fn>
void for_each_subset_of_size(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
  for (;;) {
    SubsetMask s(n);
    for (int e : idx) s = s.with(e);
    fn(s);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - (k - 1 - i)) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace overlapx
