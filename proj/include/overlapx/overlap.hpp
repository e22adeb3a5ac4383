#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "overlapx/family.hpp"

namespace overlapx {

// Cross-family intersection bounds: ell families, one non-negative bound
// per unordered pair {k, k'} of family indices. Pair-valued data is kept
// in pair-lexicographic order (1,2),(1,3),...,(1,l),(2,3),...,(l-1,l).
class OverlapSpec {
 public:
  OverlapSpec(int ell, std::vector<int> pair_bounds);

  static OverlapSpec uniform(int ell, int m);

  int ell() const { return ell_; }
  int pair_count() const { return ell_ * (ell_ - 1) / 2; }

  // Symmetric access, 1-based family indices.
  int bound(int k, int kp) const { return bounds_[pair_index(ell_, k, kp)]; }

  const std::vector<int>& bounds() const { return bounds_; }

  // sigma = sum of all pair bounds; derived, never stored.
  int sigma() const;

  bool is_uniform() const;
  // The common bound; requires a uniform spec.
  int uniform_bound() const;

  // Lexicographic rank of the unordered pair {k, k'}.
  static std::size_t pair_index(int ell, int k, int kp);

 private:
  int ell_;
  std::vector<int> bounds_;
};

struct OverlapViolation {
  int family_a = 0;  // 1-based, family_a < family_b
  int family_b = 0;
  SubsetMask set_a;
  SubsetMask set_b;
};

// Empty result means the tuple satisfies the overlapping property;
// otherwise the lexicographically first violating witness is returned
// (pair order, then member order in each family).
std::optional<OverlapViolation> verify_overlap(std::span<const SetFamily> families,
                                               const OverlapSpec& spec);

// Every violating cross-pair; costs O(|F_k||F_k'|) per family pair.
std::vector<OverlapViolation> all_overlap_violations(std::span<const SetFamily> families,
                                                     const OverlapSpec& spec);

// Greedy canonical completion: scans all subsets in ascending numeric
// order, trying families 1..l for each, and adds every set whose
// addition keeps the property. The result is maximal and down-closed.
std::vector<SetFamily> maximal_completion(std::vector<SetFamily> families,
                                          const OverlapSpec& spec,
                                          int enumeration_cap = 24);

// True iff no single subset can be added to any family.
bool is_maximal(std::span<const SetFamily> families, const OverlapSpec& spec,
                int enumeration_cap = 24);

// Text form: "l=<int>; m=<v_12,v_13,...,v_{l-1,l}>", uniform shorthand
// "m=<int>" allowed.
std::string format_overlap_spec(const OverlapSpec& spec);
OverlapSpec parse_overlap_spec(std::string_view text);

}  // namespace overlapx
