#include "overlapx/random.hpp"

#include <algorithm>

namespace overlapx {

SubsetMask random_mask(SplitMix64& rng, int n) {
  std::uint64_t lo = rng.next();
  std::uint64_t hi = n > 64 ? rng.next() : 0;
  SubsetMask full = SubsetMask::full_set(n);
  return SubsetMask::from_words(n, lo & full.lo(), hi & full.hi());
}

SetFamily random_family(SplitMix64& rng, int n, std::size_t max_members) {
  std::size_t count = static_cast<std::size_t>(rng.below(max_members + 1));
  std::vector<SubsetMask> members;
  members.reserve(count);
  for (std::size_t i = 0; i < count; ++i) members.push_back(random_mask(rng, n));
  return SetFamily(n, std::move(members));
}

SetFamily random_downset(SplitMix64& rng, int n, std::size_t max_seeds) {
  return down_closure(random_family(rng, n, max_seeds));
}

Hypergraph random_hypergraph(SplitMix64& rng, int vertices, int max_edge_size,
                             std::size_t max_edges) {
  std::size_t count = static_cast<std::size_t>(rng.below(max_edges + 1));
  std::vector<SubsetMask> edges;
  edges.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    int size = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(
                       std::min(max_edge_size, vertices))));
    SubsetMask e(vertices);
    while (e.cardinality() < size)
      e = e.with(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(vertices))));
    edges.push_back(e);
  }
  return Hypergraph(SubsetMask::full_set(vertices),
                    SetFamily(vertices, std::move(edges)));
}

}  // namespace overlapx
