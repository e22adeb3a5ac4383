#include "overlapx/constructions.hpp"

#include <algorithm>
#include <numeric>

namespace overlapx {

AllocationVector::AllocationVector(OverlapSpec spec, std::vector<int> parts)
    : spec_(std::move(spec)), parts_(std::move(parts)) {
  if (parts_.size() != static_cast<std::size_t>(spec_.pair_count()))
    throw PreconditionError("allocation needs one part per family pair");
  for (int p : parts_)
    if (p < 0) throw PreconditionError("allocation parts must be non-negative");
}

int AllocationVector::total() const {
  return std::accumulate(parts_.begin(), parts_.end(), 0);
}

PartitionLayout::PartitionLayout(AllocationVector alloc) : alloc_(std::move(alloc)) {
  const int n = alloc_.total();
  if (n > kMaxGroundSize)
    throw CapacityError("layout ground size exceeds the mask width");
  int next = 1;
  blocks_.reserve(alloc_.parts().size());
  for (int part : alloc_.parts()) {
    SubsetMask block(n);
    for (int i = 0; i < part; ++i) block = block.with(next++);
    blocks_.push_back(block);
  }
}

std::vector<SetFamily> octopus_build(const PartitionLayout& layout, int materialize_cap) {
  const OverlapSpec& spec = layout.spec();
  const int n = layout.ground_size();
  if (n > materialize_cap)
    throw CapacityError("octopus materialization exceeds the ground-size cap");

  std::vector<SetFamily> families;
  families.reserve(static_cast<std::size_t>(spec.ell()));
  for (int k = 1; k <= spec.ell(); ++k) {
    SubsetMask center(n);
    for (int kp = k + 1; kp <= spec.ell(); ++kp) center = center.unite(layout.block(k, kp));
    SetFamily fam = SetFamily::sets_of_size_at_most(n, center.cardinality(), center);
    for (int kp = 1; kp < k; ++kp) {
      SetFamily tentacle =
          SetFamily::sets_of_size_at_most(n, spec.bound(kp, k), layout.block(kp, k));
      fam = join(fam, tentacle);
    }
    families.push_back(std::move(fam));
  }
  return families;
}

std::vector<BigInt> octopus_family_sizes(const AllocationVector& alloc) {
  const OverlapSpec& spec = alloc.spec();
  std::vector<BigInt> sizes;
  sizes.reserve(static_cast<std::size_t>(spec.ell()));
  for (int k = 1; k <= spec.ell(); ++k) {
    int center = 0;
    for (int kp = k + 1; kp <= spec.ell(); ++kp) center += alloc.part(k, kp);
    BigInt size = pow2(static_cast<unsigned long>(center));
    for (int kp = 1; kp < k; ++kp)
      size *= binomial_sum(static_cast<unsigned long>(alloc.part(kp, k)),
                           static_cast<unsigned long>(spec.bound(kp, k)));
    sizes.push_back(std::move(size));
  }
  return sizes;
}

BigInt octopus_size(const AllocationVector& alloc) {
  const OverlapSpec& spec = alloc.spec();
  BigInt product = pow2(static_cast<unsigned long>(alloc.total()));
  for (std::size_t i = 0; i < alloc.parts().size(); ++i)
    product *= binomial_sum(static_cast<unsigned long>(alloc.parts()[i]),
                            static_cast<unsigned long>(spec.bounds()[i]));
  return product;
}

PartitionOptimum optimize_partition(int n, const OverlapSpec& spec) {
  if (n < 0) throw PreconditionError("n must be non-negative");
  const std::size_t pairs = static_cast<std::size_t>(spec.pair_count());

  // suffix_best[j][b]: max over allocations spending exactly budget b on
  // pairs j..end; 0 marks infeasible leftovers.
  std::vector<std::vector<BigInt>> suffix_best(
      pairs + 1, std::vector<BigInt>(static_cast<std::size_t>(n) + 1, BigInt(0)));
  suffix_best[pairs][0] = 1;

  std::vector<std::vector<BigInt>> factor(pairs);
  for (std::size_t j = 0; j < pairs; ++j) {
    factor[j].resize(static_cast<std::size_t>(n) + 1);
    for (int t = 0; t <= n; ++t)
      factor[j][static_cast<std::size_t>(t)] =
          binomial_sum(static_cast<unsigned long>(t),
                       static_cast<unsigned long>(spec.bounds()[j]));
  }

  for (std::size_t j = pairs; j-- > 0;) {
    for (int b = 0; b <= n; ++b) {
      BigInt best = 0;
      for (int t = 0; t <= b; ++t) {
        BigInt v = factor[j][static_cast<std::size_t>(t)] *
                   suffix_best[j + 1][static_cast<std::size_t>(b - t)];
        if (v > best) best = v;
      }
      suffix_best[j][static_cast<std::size_t>(b)] = std::move(best);
    }
  }

  // Greedy front-to-back reconstruction yields the lexicographically
  // smallest maximizer.
  std::vector<int> parts(pairs, 0);
  int budget = n;
  for (std::size_t j = 0; j < pairs; ++j) {
    for (int t = 0; t <= budget; ++t) {
      BigInt v = factor[j][static_cast<std::size_t>(t)] *
                 suffix_best[j + 1][static_cast<std::size_t>(budget - t)];
      if (v == suffix_best[j][static_cast<std::size_t>(budget)]) {
        parts[j] = t;
        budget -= t;
        break;
      }
    }
  }

  BigInt value = suffix_best[0][static_cast<std::size_t>(n)];
  return PartitionOptimum{AllocationVector(spec, std::move(parts)), std::move(value)};
}

AllocationVector proportional_allocation(int n, const OverlapSpec& spec) {
  if (n < 0) throw PreconditionError("n must be non-negative");
  const std::size_t pairs = static_cast<std::size_t>(spec.pair_count());
  const int sigma = spec.sigma();
  std::vector<int> parts(pairs, 0);
  if (sigma == 0) {
    parts[0] = n;
    return AllocationVector(spec, std::move(parts));
  }

  // floor parts, then hand out the remainder by largest fractional part
  // (ties to the earlier pair).
  int assigned = 0;
  std::vector<std::pair<Rational, std::size_t>> remainders;
  for (std::size_t j = 0; j < pairs; ++j) {
    long num = static_cast<long>(spec.bounds()[j]) * n;
    parts[j] = static_cast<int>(num / sigma);
    assigned += parts[j];
    remainders.emplace_back(make_rational(num % sigma, sigma), j);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (int i = 0; i < n - assigned; ++i)
    ++parts[remainders[static_cast<std::size_t>(i)].second];
  return AllocationVector(spec, std::move(parts));
}

Rational asymptotic_value(int n, const OverlapSpec& spec) {
  if (n < 0) throw PreconditionError("n must be non-negative");
  const int sigma = spec.sigma();
  Rational value(pow2(static_cast<unsigned long>(n)));
  if (sigma == 0) return value;
  for (int b : spec.bounds()) {
    unsigned long m = static_cast<unsigned long>(b);
    Rational base = make_rational(BigInt(static_cast<long>(b) * n), BigInt(sigma));
    value *= rational_pow(base, m) / Rational(factorial(m));
  }
  return value;
}

}  // namespace overlapx
