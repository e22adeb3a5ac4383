#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "overlapx/coloring.hpp"
#include "overlapx/overlap.hpp"

namespace overlapx {

struct SearchOptions {
  std::uint64_t node_budget = 0;  // 0 = unlimited
  bool prune = true;              // admissible completion-bound pruning
  bool fix_first_color = false;   // symmetry reduction: first edge gets color 1
  int threads = 1;                // branch-parallel workers at the root
};

struct SearchReport {
  BigInt optimum;
  std::optional<Coloring> witness_coloring;
  std::vector<SetFamily> witness_families;
  std::uint64_t nodes_visited = 0;
  BigInt bound_used;
  std::chrono::nanoseconds wall_time{0};
  bool exact = false;
};

// Exact maximum of the product of per-color monochromatic clique counts
// over all l-colorings of the (m+1)-subsets of [n]. Depth-first over
// edges in lexicographic order; prunes with a wildcard completion bound
// (unassigned edges count for every color). The witness is the first
// optimal coloring in scan order.
SearchReport exact_search(int n, int ell, int m, const SearchOptions& opts = {});

// Independent oracle: enumerates every downset tuple over 2^[n] (n <= 4,
// l <= 3), filters by the overlapping property, and maximizes the size
// product. Supports non-uniform bounds.
SearchReport family_bruteforce(int n, const OverlapSpec& spec);

// Hill climbing over single-edge recolorings, seeded with the coloring
// induced by the best octopus. `iterations` caps accepted moves; the
// result never falls below the seed value. Not exact.
SearchReport local_search(int n, int ell, int m, std::uint64_t seed,
                          std::uint64_t iterations);

// Unconditional upper bound 2^n * prod_k binom(n, <= partial m-sums),
// minimized over all family orderings when l <= 5.
BigInt daykin_chain_bound(int n, const OverlapSpec& spec);

}  // namespace overlapx
