#include <doctest.h>

#include "helpers.hpp"
#include "overlapx/coloring.hpp"
#include "overlapx/constructions.hpp"

using namespace overlapx;
using testutil::fam;
using testutil::set_of;

namespace {

// Independent reference: count sets with all (m+1)-subsets colored c by
// brute force over every subset.
BigInt brute_mono_count(const Coloring& c, int color) {
  BigInt count = 0;
  for_each_submask(SubsetMask::full_set(c.n()), [&](const SubsetMask& s) {
    bool ok = true;
    for_each_subset_of_size(c.n(), c.m() + 1, [&](const SubsetMask& e) {
      if (e.subset_of(s) && c.color_of(e) != color) ok = false;
    });
    if (ok) ++count;
  });
  return count;
}

}  // namespace

TEST_CASE("coloring edge indexing is lexicographic") {
  Coloring c(4, 1, 2);
  CHECK(c.edge_count() == 6);
  CHECK(c.edge(0) == set_of(4, {1, 2}));
  CHECK(c.edge(1) == set_of(4, {1, 3}));
  CHECK(c.edge(2) == set_of(4, {1, 4}));
  CHECK(c.edge(3) == set_of(4, {2, 3}));
  CHECK(c.edge(5) == set_of(4, {3, 4}));
  for (std::size_t i = 0; i < c.edge_count(); ++i)
    CHECK(c.edge_index(c.edge(i)) == i);
  CHECK_THROWS_AS(c.edge_index(set_of(4, {1})), PreconditionError);
  CHECK_THROWS_AS(c.set_color(0, 3), PreconditionError);
}

TEST_CASE("families from the all-one coloring") {
  Coloring c(3, 1, 2);
  auto families = families_from_coloring(c);
  CHECK(families[0] == SetFamily::power_set(3));
  CHECK(families[1] == SetFamily::sets_of_size_at_most(3, 1, SubsetMask::full_set(3)));
  CHECK(size_product(families) == 32);
}

TEST_CASE("families from a single recolored edge, n=2") {
  Coloring c(2, 1, 2);
  c.set_color(0, 2);
  auto families = families_from_coloring(c);
  CHECK(families[0].size() == 3);
  CHECK(families[1].size() == 4);
  CHECK(size_product(families) == 12);  // (n+1) 2^n at n=2
}

TEST_CASE("families for a 2-uniform bound from a single triple") {
  Coloring c(3, 2, 2);  // one edge {1,2,3}, color 1
  auto families = families_from_coloring(c);
  CHECK(families[0] == SetFamily::power_set(3));
  CHECK(families[1] == SetFamily::sets_of_size_at_most(3, 2, SubsetMask::full_set(3)));
  CHECK(families[0].size() == 8);
  CHECK(families[1].size() == 7);
}

TEST_CASE("coloring round trip through families") {
  Coloring c(3, 1, 2);
  auto families = families_from_coloring(c);
  OverlapSpec spec = OverlapSpec::uniform(2, 1);
  CHECK(is_maximal(families, spec));
  Coloring back = coloring_from_families(families, spec);
  CHECK(back == c);
  CHECK(families_from_coloring(back) == families);
}

TEST_CASE("octopus completion induces a valid coloring") {
  OverlapSpec spec = OverlapSpec::uniform(3, 1);
  auto families = octopus_build(PartitionLayout(AllocationVector(spec, {2, 2, 2})));
  auto completed = maximal_completion(families, spec);
  CHECK(is_maximal(completed, spec));
  Coloring c = coloring_from_families(completed, spec);
  auto round = families_from_coloring(c);
  for (std::size_t k = 0; k < completed.size(); ++k) CHECK(round[k] == completed[k]);
}

TEST_CASE("complement hypergraph of the octopus lists the cross layers") {
  OverlapSpec spec = OverlapSpec::uniform(3, 1);
  auto families = octopus_build(PartitionLayout(AllocationVector(spec, {2, 2, 2})));
  Hypergraph h1 = complement_hypergraph(families, spec, 1);
  // 2-sets of family 2 ({5,6} plus tentacle-by-center products) and of
  // family 3 (one tentacle element per block)
  SetFamily expected =
      fam(6, {{5, 6}, {1, 5}, {1, 6}, {2, 5}, {2, 6}, {3, 5}, {3, 6}, {4, 5}, {4, 6}});
  CHECK(h1.edges == expected);
}

TEST_CASE("coloring_from_families rejects non-maximal tuples") {
  std::vector<SetFamily> bad = {fam(2, {{}}), fam(2, {{}})};
  CHECK_THROWS_AS(coloring_from_families(bad, OverlapSpec::uniform(2, 1)),
                  PreconditionError);
}

TEST_CASE("monochromatic counts match the reference and the families") {
  Coloring all_one(3, 1, 2);
  CHECK(count_monochromatic(all_one) == std::vector<BigInt>{8, 4});

  Coloring two(2, 1, 2);
  two.set_color(0, 2);
  CHECK(count_monochromatic(two) == std::vector<BigInt>{3, 4});

  // perfect matching {1,2},{3,4} in color 1, the rest color 2
  Coloring matching(4, 1, 2);
  for (std::size_t i = 0; i < matching.edge_count(); ++i) matching.set_color(i, 2);
  matching.set_color(matching.edge_index(set_of(4, {1, 2})), 1);
  matching.set_color(matching.edge_index(set_of(4, {3, 4})), 1);
  auto counts = count_monochromatic(matching);
  CHECK(counts == std::vector<BigInt>{brute_mono_count(matching, 1),
                                      brute_mono_count(matching, 2)});
  CHECK(counts == std::vector<BigInt>{7, 9});
}

TEST_CASE("three counting routes agree") {
  // counts, family sizes, and independent sets in the complement must
  // match on an arbitrary coloring
  Coloring c(4, 1, 3);
  c.set_color(0, 2);
  c.set_color(2, 3);
  c.set_color(4, 2);
  auto counts = count_monochromatic(c);
  auto families = families_from_coloring(c);
  OverlapSpec spec = OverlapSpec::uniform(3, 1);
  for (int k = 1; k <= 3; ++k) {
    CHECK(counts[static_cast<std::size_t>(k - 1)] ==
          BigInt(static_cast<unsigned long>(families[static_cast<std::size_t>(k - 1)].size())));
    CHECK(counts[static_cast<std::size_t>(k - 1)] ==
          count_independent(complement_hypergraph(families, spec, k)));
    CHECK(counts[static_cast<std::size_t>(k - 1)] == brute_mono_count(c, k));
  }
}

TEST_CASE("complement hypergraph layers") {
  std::vector<SetFamily> tight = {
      SetFamily::power_set(3),
      SetFamily::sets_of_size_at_most(3, 1, SubsetMask::full_set(3))};
  OverlapSpec spec = OverlapSpec::uniform(2, 1);
  Hypergraph h2 = complement_hypergraph(tight, spec, 2);
  CHECK(h2.edges.size() == 3);  // all pairs of [3]
  Hypergraph h1 = complement_hypergraph(tight, spec, 1);
  CHECK(h1.edges.empty());  // family 2 has no 2-sets
}

TEST_CASE("count_independent examples") {
  CHECK(count_independent(Hypergraph(SubsetMask::full_set(4), SetFamily(4))) == 16);
  CHECK(count_independent(Hypergraph(SubsetMask::full_set(2), fam(2, {{1, 2}}))) == 3);
  // triangle as three pair edges: only the empty set and singletons
  CHECK(count_independent(Hypergraph(SubsetMask::full_set(3),
                                     fam(3, {{1, 2}, {1, 3}, {2, 3}}))) == 4);
  // triangle as a single 3-uniform edge: everything but the full set
  CHECK(count_independent(Hypergraph(SubsetMask::full_set(3), fam(3, {{1, 2, 3}}))) == 7);
  // vertices may be a strict subset of the ground set
  CHECK(count_independent(Hypergraph(set_of(4, {1, 2, 3}), fam(4, {{1, 2}}))) == 6);
}

TEST_CASE("hypergraph validates edges against vertices") {
  CHECK_THROWS_AS(Hypergraph(set_of(3, {1}), fam(3, {{2}})), PreconditionError);
}

TEST_CASE("coloring text format") {
  Coloring c(3, 1, 2);
  c.set_color(1, 2);
  std::string text = format_coloring(c);
  CHECK(text == "n=3 m=1 l=2\n1,2: 1\n1,3: 2\n2,3: 1\n");
  CHECK(parse_coloring(text) == c);
  CHECK(parse_coloring(text, true) == c);

  // sparse form omits color-1 lines and parses back with the default
  std::string sparse = format_coloring(c, true);
  CHECK(sparse == "n=3 m=1 l=2\n1,3: 2\n");
  CHECK(parse_coloring(sparse) == c);
  CHECK_THROWS_AS(parse_coloring(sparse, true), ParseError);

  CHECK_THROWS_AS(parse_coloring("n=3 m=1 l=2\n1,2: 5\n"), ParseError);
  CHECK_THROWS_AS(parse_coloring("n=3 m=1 l=2\n1: 1\n"), ParseError);
  CHECK_THROWS_AS(parse_coloring("n=3 m=1 l=2\n1,2: 1\n1,2: 2\n"), ParseError);
  CHECK_THROWS_AS(parse_coloring("m=1 l=2\n"), ParseError);
}
