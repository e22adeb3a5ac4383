#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "overlapx/bigint.hpp"
#include "overlapx/mask.hpp"

namespace overlapx {

// Default cap on materialized family members (down-closures, completions).
inline constexpr std::size_t kDefaultMemberLimit = std::size_t{1} << 26;

// A deduplicated collection of SubsetMask over a shared ground size,
// kept sorted by the numeric value of the bit vector. Immutable value
// type; all lattice operations are pure functions.
class SetFamily {
 public:
  explicit SetFamily(int ground_size);

  // Sorts, deduplicates, and checks that every member lives on the
  // family's ground set.
  SetFamily(int ground_size, std::vector<SubsetMask> members);

  // Members must already be sorted ascending and free of duplicates.
  static SetFamily from_sorted_unique(int ground_size, std::vector<SubsetMask> members);

  static SetFamily power_set(int ground_size, std::size_t member_limit = kDefaultMemberLimit);

  // binom(within, <= k): all subsets of `within` of cardinality at most k.
  static SetFamily sets_of_size_at_most(int ground_size, int k, const SubsetMask& within);

  int ground_size() const { return ground_size_; }
  const std::vector<SubsetMask>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(const SubsetMask& s) const;

  friend bool operator==(const SetFamily& a, const SetFamily& b) {
    return a.ground_size_ == b.ground_size_ && a.members_ == b.members_;
  }

 private:
  int ground_size_ = 0;
  std::vector<SubsetMask> members_;
};

// F-down-arrow: the smallest down-closed family containing f.
SetFamily down_closure(const SetFamily& f, std::size_t member_limit = kDefaultMemberLimit);

// Families of all pairwise intersections / unions (the lattice meet and
// join), deduplicated.
SetFamily meet(const SetFamily& a, const SetFamily& b);
SetFamily join(const SetFamily& a, const SetFamily& b);

// {F intersect B : F in f}, ground size unchanged.
SetFamily restrict_to(const SetFamily& f, const SubsetMask& b);

// F(A, B) = {F \ B : F in f, F intersect B = A}; requires A subset of B.
SetFamily trace(const SetFamily& f, const SubsetMask& a, const SubsetMask& b);

// F(A) = trace(f, A, A): members containing A, with A removed.
SetFamily trace_containing(const SetFamily& f, const SubsetMask& a);

// F(A-bar) = trace(f, empty, A): members disjoint from A.
SetFamily trace_avoiding(const SetFamily& f, const SubsetMask& a);

// Normalized degree d(s, f) = |f(s)| / |f|; exact rational in [0, 1].
Rational degree(const SetFamily& f, const SubsetMask& s);

// Union of all members (on down-closed families this is {x : {x} in f}).
SubsetMask support(const SetFamily& f);

// A member of maximum cardinality; ties go to the smallest numeric value.
SubsetMask max_cardinality_set(const SetFamily& f);

// mu_p(f) = sum over members of p^|X| (1-p)^(n-|X|), exact.
Rational biased_measure(const SetFamily& f, const Rational& p);

bool is_down_closed(const SetFamily& f);

// Product of the member counts of a tuple of families, exact.
BigInt size_product(std::span<const SetFamily> families);

// Text format: first line "n=<int>", then one member per line as
// comma-separated ascending elements, "-" for the empty set.
std::string format_family(const SetFamily& f);
SetFamily parse_family(std::string_view text);

}  // namespace overlapx
