#include <doctest.h>

#include "helpers.hpp"
#include "overlapx/constructions.hpp"
#include "overlapx/random.hpp"
#include "overlapx/search.hpp"

using namespace overlapx;

namespace {

// Plain-loop oracle: every coloring of the (m+1)-subsets enumerated by
// odometer, clique counts by brute force over all subsets. No pruning,
// no shared code with the search.
BigInt oracle_best_coloring_product(int n, int ell, int m) {
  std::vector<SubsetMask> edges;
  for_each_subset_of_size(n, m + 1, [&](const SubsetMask& e) { edges.push_back(e); });
  std::vector<int> colors(edges.size(), 1);
  BigInt best = -1;
  for (;;) {
    BigInt product = 1;
    for (int c = 1; c <= ell; ++c) {
      BigInt count = 0;
      for_each_submask(SubsetMask::full_set(n), [&](const SubsetMask& s) {
        bool mono = true;
        for (std::size_t i = 0; i < edges.size(); ++i)
          if (edges[i].subset_of(s) && colors[i] != c) mono = false;
        if (mono) ++count;
      });
      product *= count;
    }
    if (product > best) best = product;
    std::size_t pos = 0;
    while (pos < colors.size() && colors[pos] == ell) colors[pos++] = 1;
    if (pos == colors.size()) break;
    ++colors[pos];
  }
  return best;
}

}  // namespace

TEST_CASE("exact search reproduces the two-family closed form") {
  CHECK(exact_search(2, 2, 1).optimum == 12);
  CHECK(exact_search(4, 2, 1).optimum == 80);
  for (int n = 2; n <= 5; ++n)
    CHECK(exact_search(n, 2, 1).optimum ==
          BigInt(n + 1) * pow2(static_cast<unsigned long>(n)));
}

TEST_CASE("exact search agrees with the plain-loop oracle at (4,3,1)") {
  BigInt oracle = oracle_best_coloring_product(4, 3, 1);
  CHECK(oracle == 400);
  SearchReport pruned = exact_search(4, 3, 1);
  CHECK(pruned.optimum == 400);
  CHECK(pruned.exact);
  SearchOptions plain;
  plain.prune = false;
  CHECK(exact_search(4, 3, 1, plain).optimum == 400);
}

TEST_CASE("exact search matches an independently tabulated grid") {
  // values recomputed by a separate plain-enumeration implementation
  struct Row {
    int n, ell, m;
    long value;
  };
  const Row rows[] = {
      {1, 2, 1, 4},    {2, 2, 1, 12},   {3, 2, 1, 32},   {4, 2, 1, 80},
      {5, 2, 1, 192},  {3, 2, 2, 56},   {4, 2, 2, 176},  {5, 2, 2, 512},
      {1, 3, 1, 8},    {2, 3, 1, 36},   {3, 3, 1, 128},  {4, 3, 1, 400},
      {5, 3, 1, 1152}, {2, 3, 2, 64},   {3, 3, 2, 392},  {4, 3, 2, 1936},
      {5, 3, 2, 8192}, {4, 2, 0, 16},   {5, 3, 0, 32},
  };
  for (const Row& row : rows)
    CHECK(exact_search(row.n, row.ell, row.m).optimum == row.value);
}

TEST_CASE("pruned search equals plain enumeration on a small grid") {
  for (int ell = 2; ell <= 3; ++ell)
    for (int m = 0; m <= 2; ++m)
      for (int n = 1; n <= 4; ++n) {
        SearchOptions plain;
        plain.prune = false;
        SearchReport a = exact_search(n, ell, m);
        SearchReport b = exact_search(n, ell, m, plain);
        CHECK(a.optimum == b.optimum);
        CHECK(a.nodes_visited <= b.nodes_visited);
        CHECK(*a.witness_coloring == *b.witness_coloring);
      }
}

TEST_CASE("witness evaluates to the optimum") {
  SearchReport r = exact_search(4, 3, 1);
  REQUIRE(r.witness_coloring.has_value());
  auto counts = count_monochromatic(*r.witness_coloring);
  BigInt product = 1;
  for (const BigInt& c : counts) product *= c;
  CHECK(product == r.optimum);
}

TEST_CASE("symmetry reduction and threads preserve the value") {
  SearchOptions fixed;
  fixed.fix_first_color = true;
  CHECK(exact_search(4, 3, 1, fixed).optimum == 400);
  SearchOptions parallel;
  parallel.threads = 3;
  SearchReport r = exact_search(4, 3, 1, parallel);
  CHECK(r.optimum == 400);
  // the canonical witness does not depend on scheduling
  CHECK(*r.witness_coloring == *exact_search(4, 3, 1).witness_coloring);
}

TEST_CASE("degenerate coloring spaces") {
  // m+1 > n: nothing to color, every family is the full power set
  SearchReport r = exact_search(2, 2, 2);
  CHECK(r.optimum == 16);
  CHECK(r.exact);
  CHECK(r.nodes_visited >= 1);
}

TEST_CASE("node budget returns best-so-far inexactly") {
  SearchOptions tight;
  tight.node_budget = 3;
  SearchReport r = exact_search(4, 2, 1, tight);
  CHECK(!r.exact);
  CHECK(r.optimum <= 80);
  SearchOptions enough;
  enough.node_budget = 100000000;
  CHECK(exact_search(4, 2, 1, enough).exact);
}

TEST_CASE("family bruteforce examples") {
  CHECK(family_bruteforce(3, OverlapSpec::uniform(2, 1)).optimum == 32);
  CHECK(family_bruteforce(3, OverlapSpec::uniform(2, 0)).optimum == 8);
  SearchReport r = family_bruteforce(4, OverlapSpec::uniform(3, 1));
  CHECK(r.optimum == 400);
  CHECK(r.exact);
  REQUIRE(r.witness_families.size() == 3);
  CHECK(!verify_overlap(r.witness_families, OverlapSpec::uniform(3, 1)).has_value());
  CHECK(size_product(r.witness_families) == 400);
  CHECK_THROWS_AS(family_bruteforce(5, OverlapSpec::uniform(2, 1)), CapacityError);
}

TEST_CASE("family bruteforce handles non-uniform bounds") {
  SearchReport r = family_bruteforce(3, OverlapSpec(3, {1, 0, 2}));
  CHECK(r.exact);
  CHECK(!verify_overlap(r.witness_families, OverlapSpec(3, {1, 0, 2})).has_value());
  CHECK(size_product(r.witness_families) == r.optimum);
}

TEST_CASE("the two formulations agree") {
  for (auto [n, ell, m] : {std::tuple{2, 2, 1}, {3, 2, 1}, {3, 3, 1}, {4, 2, 1}}) {
    CHECK(family_bruteforce(n, OverlapSpec::uniform(ell, m)).optimum ==
          exact_search(n, ell, m).optimum);
  }
}

TEST_CASE("local search dominates its octopus seed") {
  SearchReport r = local_search(6, 3, 1, 42, 100);
  // the seed is the completed octopus, so it already beats the raw
  // construction value
  CHECK(r.bound_used >= 1728);
  CHECK(r.optimum >= r.bound_used);
  CHECK(!r.exact);
  REQUIRE(r.witness_coloring.has_value());
  auto counts = count_monochromatic(*r.witness_coloring);
  BigInt product = 1;
  for (const BigInt& c : counts) product *= c;
  CHECK(product == r.optimum);
}

TEST_CASE("local search on two families starts at the optimum and stays") {
  for (int n = 3; n <= 6; ++n) {
    SearchReport r = local_search(n, 2, 1, 7, 50);
    BigInt frankl = BigInt(n + 1) * pow2(static_cast<unsigned long>(n));
    CHECK(r.bound_used == frankl);
    CHECK(r.optimum == frankl);  // no improving move exists
  }
}

TEST_CASE("local search with zero iterations returns the seed") {
  SearchReport r = local_search(6, 3, 1, 99, 0);
  CHECK(r.optimum == r.bound_used);
  CHECK(r.optimum >= 1728);
  CHECK(r.nodes_visited == 0);
  // the seed value is what the witness coloring evaluates to
  auto counts = count_monochromatic(*r.witness_coloring);
  BigInt product = 1;
  for (const BigInt& c : counts) product *= c;
  CHECK(product == r.optimum);
}

TEST_CASE("local search dominates the raw octopus at n=8") {
  // optimize_partition(8) gives (3,3,2) with value 48, so 48 * 2^8
  OverlapSpec spec = OverlapSpec::uniform(3, 1);
  BigInt octopus = octopus_size(optimize_partition(8, spec).alloc);
  CHECK(octopus == 12288);
  CHECK(local_search(8, 3, 1, 7, 100).optimum >= octopus);
}

TEST_CASE("local search is deterministic in the seed") {
  SearchReport a = local_search(7, 3, 1, 5, 30);
  SearchReport b = local_search(7, 3, 1, 5, 30);
  CHECK(a.optimum == b.optimum);
  CHECK(*a.witness_coloring == *b.witness_coloring);
  CHECK(a.nodes_visited == b.nodes_visited);
}

TEST_CASE("daykin chain bound") {
  // two families: exactly the two-family optimum
  for (int m = 0; m <= 3; ++m)
    CHECK(daykin_chain_bound(6, OverlapSpec::uniform(2, m)) ==
          pow2(6) * binomial_sum(6, static_cast<unsigned long>(m)));
  CHECK(daykin_chain_bound(6, OverlapSpec::uniform(3, 1)) == 9856);
  CHECK(daykin_chain_bound(4, OverlapSpec::uniform(3, 0)) == 16);
  // ordering matters; the minimum over permutations is reported
  OverlapSpec skew(3, {0, 2, 2});
  BigInt identity_order = pow2(5) * binomial_sum(5, 0) * binomial_sum(5, 4);
  CHECK(daykin_chain_bound(5, skew) <= identity_order);
}

TEST_CASE("non-uniform sandwich: construction below oracle below chain bound") {
  SplitMix64 rng(61);
  for (int trial = 0; trial < 15; ++trial) {
    int ell = 2 + static_cast<int>(rng.below(2));
    std::vector<int> bounds;
    for (int i = 0; i < ell * (ell - 1) / 2; ++i)
      bounds.push_back(static_cast<int>(rng.below(3)));
    OverlapSpec spec(ell, std::move(bounds));
    int n = 2 + static_cast<int>(rng.below(3));
    BigInt octopus = octopus_size(optimize_partition(n, spec).alloc);
    BigInt oracle = family_bruteforce(n, spec).optimum;
    CHECK(octopus <= oracle);
    CHECK(oracle <= daykin_chain_bound(n, spec));
  }
}

TEST_CASE("bound sandwich on small instances") {
  for (int ell = 2; ell <= 3; ++ell)
    for (int m = 0; m <= 1; ++m)
      for (int n = 2; n <= 4; ++n) {
        OverlapSpec spec = OverlapSpec::uniform(ell, m);
        BigInt octopus = octopus_size(optimize_partition(n, spec).alloc);
        BigInt local = local_search(n, ell, m, 1, 50).optimum;
        BigInt exact = exact_search(n, ell, m).optimum;
        BigInt chain = daykin_chain_bound(n, spec);
        CHECK(octopus <= local);
        CHECK(local <= exact);
        CHECK(exact <= chain);
      }
}
