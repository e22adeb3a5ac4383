#pragma once

#include <cstdint>

#include "overlapx/coloring.hpp"
#include "overlapx/family.hpp"

namespace overlapx {

// splitmix64; fixed here so seeded runs reproduce byte-identically on
// any platform, which std::shuffle and friends do not guarantee.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform-enough draw in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

SubsetMask random_mask(SplitMix64& rng, int n);
SetFamily random_family(SplitMix64& rng, int n, std::size_t max_members);
SetFamily random_downset(SplitMix64& rng, int n, std::size_t max_seeds);
Hypergraph random_hypergraph(SplitMix64& rng, int vertices, int max_edge_size,
                             std::size_t max_edges);

}  // namespace overlapx
