#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "overlapx/coloring.hpp"
#include "overlapx/family.hpp"
#include "overlapx/overlap.hpp"

namespace overlapx {

// Outcome of one inequality check; holds iff lhs <= rhs, both exact.
struct IneqVerdict {
  bool holds = false;
  Rational lhs;
  Rational rhs;
  std::string witness;  // reproduction data when the check fails
};

// |A||B| <= 2^n |A meet B| for down-closed A, B.
IneqVerdict check_harris_kleitman(const SetFamily& a, const SetFamily& b);

// |A||B| <= |A join B| |A meet B| for arbitrary A, B.
IneqVerdict check_daykin(const SetFamily& a, const SetFamily& b);

// prod |A_k| <= prod_k |join over k-subsets S of (meet over S)|, l <= 5.
IneqVerdict check_rinott_saks(std::span<const SetFamily> families);

// Same with the p-biased measure in place of counting.
IneqVerdict check_rinott_saks_biased(std::span<const SetFamily> families, const Rational& p);

// 2^n * binom(n, <= m): the exact two-family optimum.
BigInt frankl_bound(int n, int m);

// Greedy maximal matching in the given edge order (indices into the
// hypergraph's edge list).
std::vector<SubsetMask> maximal_matching(const Hypergraph& h,
                                         std::span<const std::size_t> order);

// Exact minimum vertex cover by branch and bound; |V| <= 24.
SubsetMask min_cover(const Hypergraph& h);

// |min cover| <= t * |greedy matching| for the lexicographic order plus
// `random_orders` shuffles.
IneqVerdict check_cover_matching(const Hypergraph& h, int t, int random_orders = 10,
                                 std::uint64_t seed = 0);

struct EntropyReport {
  double total_bits = 0;                // log2 |F|, uniform distribution
  std::vector<double> marginal_bits;    // h2(d(F, {i})) per coordinate
  double marginal_sum() const;
};

EntropyReport empirical_entropy(const SetFamily& f);

double binary_entropy(const Rational& p);

// -sum p_i log2 q_i over the common support; p and q must have identical
// supports.
double cross_entropy(std::span<const Rational> p, std::span<const Rational> q);

struct DegreeProduct {
  Rational product;  // prod over k in K of d_k(F_k)
  int exponent = 0;  // sum over pairs {k,k'} in K of |F_k intersect F_k'|
};

// Diagnostic pair for the degree trade-off; `indices` selects K (1-based)
// and `sets` supplies one member per selected family.
DegreeProduct degree_product(std::span<const SetFamily> families, const OverlapSpec& spec,
                             std::span<const int> indices,
                             std::span<const SubsetMask> sets);

// Per element, ranks families by degree (ties to the smaller index) and
// strips each family of members touching elements where it is not among
// the top two. Every element ends up in at most two supports.
std::vector<SetFamily> prune_two_supports(std::span<const SetFamily> families,
                                          const OverlapSpec& spec);

// [n] minus the union of each family's maximum-cardinality set.
SubsetMask residual_set(std::span<const SetFamily> families);

enum class FuzzKind {
  kHarrisKleitman,
  kDaykin,
  kRinottSaks,
  kRinottSaksBiased,
  kCoverMatching,
};

struct FuzzOptions {
  FuzzKind kind = FuzzKind::kHarrisKleitman;
  std::uint64_t trials = 1000;
  int max_n = 10;
  int ell = 3;                      // families per trial for the multi-family checks
  int max_edge_size = 3;            // cover/matching only
  std::vector<Rational> ps;         // biased check; defaults to 1/4, 1/3, 3/4
  std::uint64_t seed = 0;
  int threads = 1;
};

struct FuzzSummary {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  std::uint64_t first_failure_trial = 0;  // valid when failures > 0
  std::string first_witness;
};

// Runs seeded random trials of one checker; per-trial seeds depend only
// on (seed, trial index), so results are thread-count independent.
FuzzSummary fuzz_inequality(const FuzzOptions& opts);

}  // namespace overlapx
