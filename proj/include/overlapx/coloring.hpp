#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "overlapx/family.hpp"
#include "overlapx/overlap.hpp"

namespace overlapx {

// An l-coloring of all (m+1)-subsets of [n]: an edge coloring of the
// complete (m+1)-uniform hypergraph. Edges are indexed in lexicographic
// order of their ascending element sequences.
class Coloring {
 public:
  // Starts with every edge colored 1.
  Coloring(int n, int m, int ell);

  int n() const { return n_; }
  int m() const { return m_; }
  int ell() const { return ell_; }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<SubsetMask>& edges() const { return edges_; }
  const SubsetMask& edge(std::size_t index) const { return edges_[index]; }
  std::size_t edge_index(const SubsetMask& e) const;

  int color(std::size_t index) const { return colors_[index]; }
  int color_of(const SubsetMask& e) const { return colors_[edge_index(e)]; }
  void set_color(std::size_t index, int c);
  const std::vector<std::uint8_t>& colors() const { return colors_; }

  friend bool operator==(const Coloring& a, const Coloring& b) {
    return a.n_ == b.n_ && a.m_ == b.m_ && a.ell_ == b.ell_ && a.colors_ == b.colors_;
  }

 private:
  int n_;
  int m_;
  int ell_;
  std::vector<SubsetMask> edges_;       // lex order
  std::vector<std::uint8_t> colors_;    // 1..ell, parallel to edges_
};

struct Hypergraph {
  SubsetMask vertices;
  SetFamily edges;

  Hypergraph(SubsetMask vertices, SetFamily edges);
};

// F_k = all sets whose (m+1)-subsets all carry color k (sets of size
// <= m vacuously belong to every family). Output tuple is maximal and
// m-overlapping.
std::vector<SetFamily> families_from_coloring(const Coloring& c, int materialize_cap = 24);

// Inverse bridge for maximal uniformly m-overlapping tuples: each
// (m+1)-subset is colored by the unique family containing it.
Coloring coloring_from_families(std::span<const SetFamily> families, const OverlapSpec& spec);

// Monochromatic clique counts per color, computed by backtracking
// without materializing families.
std::vector<BigInt> count_monochromatic(const Coloring& c);

// H_k: vertices [n], edges the (m_{k,k'}+1)-uniform layers of the other
// families.
Hypergraph complement_hypergraph(std::span<const SetFamily> families, const OverlapSpec& spec,
                                 int k);

// Number of subsets of the vertex set containing no edge.
BigInt count_independent(const Hypergraph& h);

// Shared backtracking counter: subsets of `universe` containing none of
// `forbidden` as a subset.
BigInt count_subsets_avoiding(const SubsetMask& universe, std::span<const SubsetMask> forbidden);

// Text format: header "n=<int> m=<int> l=<int>", one line "i1,..,ik: c"
// per edge. Omitted edges default to color 1 unless strict.
std::string format_coloring(const Coloring& c, bool sparse = false);
Coloring parse_coloring(std::string_view text, bool strict = false);

}  // namespace overlapx
