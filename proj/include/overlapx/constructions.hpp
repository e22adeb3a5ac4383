#pragma once

#include <vector>

#include "overlapx/overlap.hpp"

namespace overlapx {

// How many ground elements each family pair receives; parts are indexed
// like the spec's bounds (pair-lexicographic order) and sum to n.
class AllocationVector {
 public:
  AllocationVector(OverlapSpec spec, std::vector<int> parts);

  const OverlapSpec& spec() const { return spec_; }
  const std::vector<int>& parts() const { return parts_; }
  int part(int k, int kp) const { return parts_[OverlapSpec::pair_index(spec_.ell(), k, kp)]; }
  int total() const;

 private:
  OverlapSpec spec_;
  std::vector<int> parts_;
};

// The allocation realized as pairwise-disjoint blocks A_{k,k'} covering
// [n]: consecutive integer ranges in pair-lexicographic order.
class PartitionLayout {
 public:
  explicit PartitionLayout(AllocationVector alloc);

  const AllocationVector& alloc() const { return alloc_; }
  const OverlapSpec& spec() const { return alloc_.spec(); }
  int ground_size() const { return alloc_.total(); }
  const SubsetMask& block(int k, int kp) const {
    return blocks_[OverlapSpec::pair_index(spec().ell(), k, kp)];
  }
  const std::vector<SubsetMask>& blocks() const { return blocks_; }

 private:
  AllocationVector alloc_;
  std::vector<SubsetMask> blocks_;
};

// The octopus families: F_k is the power set of its center (the blocks
// it shares with higher-indexed families) joined with bounded tentacles
// into each lower-indexed family's block.
std::vector<SetFamily> octopus_build(const PartitionLayout& layout, int materialize_cap = 24);

// Exact product of the octopus family sizes:
// prod_S binom(n_S, <= m_S) * 2^n. Never materializes anything.
BigInt octopus_size(const AllocationVector& alloc);

// Per-family sizes of the octopus for this allocation, exact.
std::vector<BigInt> octopus_family_sizes(const AllocationVector& alloc);

struct PartitionOptimum {
  AllocationVector alloc;
  BigInt value;  // max of prod_S binom(n_S, <= m_S) subject to sum n_S = n
};

// Exact integer maximizer by dynamic programming over (pair, budget);
// ties resolve to the lexicographically smallest part vector.
PartitionOptimum optimize_partition(int n, const OverlapSpec& spec);

// n_S = round(m_S * n / sigma) with largest-remainder correction; all
// weight goes to the first pair when sigma = 0.
AllocationVector proportional_allocation(int n, const OverlapSpec& spec);

// 2^n * prod_S (1/m_S!) (m_S n / sigma)^(m_S), exact rational; plain 2^n
// when sigma = 0.
Rational asymptotic_value(int n, const OverlapSpec& spec);

}  // namespace overlapx
