#include "overlapx/coloring.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include "overlapx/detail/bits.hpp"

namespace overlapx {

Coloring::Coloring(int n, int m, int ell) : n_(n), m_(m), ell_(ell) {
  if (n < 0 || n > kMaxGroundSize) throw PreconditionError("coloring n out of range");
  if (m < 0) throw PreconditionError("coloring m must be non-negative");
  if (ell < 1 || ell > 255) throw PreconditionError("coloring l out of range");
  for_each_subset_of_size(n, m + 1, [&](const SubsetMask& e) { edges_.push_back(e); });
  colors_.assign(edges_.size(), 1);
}

std::size_t Coloring::edge_index(const SubsetMask& e) const {
  // Edges are lex-ordered by element sequence, not by numeric mask, so
  // rank combinatorially: count combinations that precede e.
  if (e.ground_size() != n_ || e.cardinality() != m_ + 1)
    throw PreconditionError("not an (m+1)-subset of this coloring's ground set");
  std::vector<int> elems = e.elements();
  const int k = static_cast<int>(elems.size());
  std::size_t rank = 0;
  int prev = 0;
  for (int i = 0; i < k; ++i) {
    for (int v = prev + 1; v < elems[static_cast<std::size_t>(i)]; ++v) {
      // combinations starting with elems[0..i-1], then v
      unsigned long rest_n = static_cast<unsigned long>(n_ - v);
      unsigned long rest_k = static_cast<unsigned long>(k - i - 1);
      rank += binomial(rest_n, rest_k).get_ui();
    }
    prev = elems[static_cast<std::size_t>(i)];
  }
  return rank;
}

void Coloring::set_color(std::size_t index, int c) {
  if (c < 1 || c > ell_) throw PreconditionError("color out of range 1..l");
  colors_[index] = static_cast<std::uint8_t>(c);
}

Hypergraph::Hypergraph(SubsetMask vertices_in, SetFamily edges_in)
    : vertices(vertices_in), edges(std::move(edges_in)) {
  if (vertices.ground_size() != edges.ground_size())
    throw PreconditionError("hypergraph vertex/edge ground-size mismatch");
  for (const SubsetMask& e : edges.members())
    if (!e.subset_of(vertices))
      throw PreconditionError("hypergraph edge outside the vertex set");
}

namespace {

// Backtracking over the universe's elements in ascending order. An edge
// is "alive" once all of its elements below the cursor are included; a
// branch that would complete an alive edge is cut. When no edge can
// still be completed the remaining elements are free.
struct AvoidCounter {
  std::vector<int> verts;
  std::vector<SubsetMask> edges;

  BigInt count(std::size_t pos, const std::vector<std::size_t>& alive) const {
    if (alive.empty())
      return pow2(static_cast<unsigned long>(verts.size() - pos));
    // alive is nonempty, so pos < verts.size()
    int v = verts[pos];
    std::vector<std::size_t> exclude_alive;
    bool include_blocked = false;
    for (std::size_t idx : alive) {
      const SubsetMask& e = edges[idx];
      if (e.contains(v)) {
        if (e.max_element() == v) include_blocked = true;
      } else {
        exclude_alive.push_back(idx);
      }
    }
    BigInt total = count(pos + 1, exclude_alive);
    if (!include_blocked) {
      std::vector<std::size_t> include_alive;
      for (std::size_t idx : alive)
        if (edges[idx].max_element() > v) include_alive.push_back(idx);
      total += count(pos + 1, include_alive);
    }
    return total;
  }
};

// Same backtracking, but materializes the valid sets.
struct AvoidCollector {
  std::vector<int> verts;
  std::vector<SubsetMask> edges;
  std::vector<SubsetMask>* out = nullptr;
  int n = 0;

  void run(std::size_t pos, SubsetMask current, const std::vector<std::size_t>& alive) {
    if (pos == verts.size()) {
      out->push_back(current);
      return;
    }
    int v = verts[pos];
    std::vector<std::size_t> exclude_alive;
    bool include_blocked = false;
    for (std::size_t idx : alive) {
      const SubsetMask& e = edges[idx];
      if (e.contains(v)) {
        if (e.max_element() == v) include_blocked = true;
      } else {
        exclude_alive.push_back(idx);
      }
    }
    run(pos + 1, current, exclude_alive);
    if (!include_blocked) {
      std::vector<std::size_t> include_alive;
      for (std::size_t idx : alive)
        if (edges[idx].max_element() > v) include_alive.push_back(idx);
      run(pos + 1, current.with(v), include_alive);
    }
  }
};

std::vector<SubsetMask> edges_inside(const SubsetMask& universe,
                                     std::span<const SubsetMask> forbidden) {
  std::vector<SubsetMask> kept;
  for (const SubsetMask& e : forbidden)
    if (e.subset_of(universe)) kept.push_back(e);
  return kept;
}

std::vector<std::size_t> all_indices(std::size_t count) {
  std::vector<std::size_t> idx(count);
  for (std::size_t i = 0; i < count; ++i) idx[i] = i;
  return idx;
}

}  // namespace

BigInt count_subsets_avoiding(const SubsetMask& universe,
                              std::span<const SubsetMask> forbidden) {
  AvoidCounter counter;
  counter.verts = universe.elements();
  counter.edges = edges_inside(universe, forbidden);
  for (const SubsetMask& e : counter.edges)
    if (e.empty()) return 0;  // the empty edge forbids every set
  return counter.count(0, all_indices(counter.edges.size()));
}

BigInt count_independent(const Hypergraph& h) {
  return count_subsets_avoiding(h.vertices, h.edges.members());
}

std::vector<SetFamily> families_from_coloring(const Coloring& c, int materialize_cap) {
  if (c.n() > materialize_cap)
    throw CapacityError("family materialization exceeds the ground-size cap");
  std::vector<SetFamily> out;
  out.reserve(static_cast<std::size_t>(c.ell()));
  SubsetMask universe = SubsetMask::full_set(c.n());
  for (int k = 1; k <= c.ell(); ++k) {
    std::vector<SubsetMask> forbidden;
    for (std::size_t i = 0; i < c.edge_count(); ++i)
      if (c.color(i) != k) forbidden.push_back(c.edge(i));
    AvoidCollector collector;
    collector.verts = universe.elements();
    collector.edges = std::move(forbidden);
    std::vector<SubsetMask> members;
    collector.out = &members;
    collector.run(0, SubsetMask(c.n()), all_indices(collector.edges.size()));
    std::sort(members.begin(), members.end());
    out.push_back(SetFamily::from_sorted_unique(c.n(), std::move(members)));
  }
  return out;
}

Coloring coloring_from_families(std::span<const SetFamily> families, const OverlapSpec& spec) {
  if (families.size() != static_cast<std::size_t>(spec.ell()))
    throw PreconditionError("family count does not match the spec arity");
  const int m = spec.uniform_bound();
  const int n = families[0].ground_size();
  for (const SetFamily& f : families)
    if (f.ground_size() != n)
      throw PreconditionError("ground-size mismatch between families");
  Coloring c(n, m, spec.ell());
  for (std::size_t i = 0; i < c.edge_count(); ++i) {
    const SubsetMask& e = c.edge(i);
    int owner = 0;
    for (int k = 1; k <= spec.ell(); ++k) {
      if (families[static_cast<std::size_t>(k - 1)].contains(e)) {
        if (owner != 0)
          throw PreconditionError("an (m+1)-subset belongs to two families");
        owner = k;
      }
    }
    if (owner == 0)
      throw PreconditionError(
          "tuple is not maximal: an (m+1)-subset belongs to no family");
    c.set_color(i, owner);
  }
  return c;
}

std::vector<BigInt> count_monochromatic(const Coloring& c) {
  std::vector<BigInt> counts;
  counts.reserve(static_cast<std::size_t>(c.ell()));
  SubsetMask universe = SubsetMask::full_set(c.n());
  for (int k = 1; k <= c.ell(); ++k) {
    std::vector<SubsetMask> forbidden;
    for (std::size_t i = 0; i < c.edge_count(); ++i)
      if (c.color(i) != k) forbidden.push_back(c.edge(i));
    counts.push_back(count_subsets_avoiding(universe, forbidden));
  }
  return counts;
}

Hypergraph complement_hypergraph(std::span<const SetFamily> families, const OverlapSpec& spec,
                                 int k) {
  if (families.size() != static_cast<std::size_t>(spec.ell()))
    throw PreconditionError("family count does not match the spec arity");
  if (k < 1 || k > spec.ell()) throw PreconditionError("family index out of range");
  const int n = families[0].ground_size();
  std::vector<SubsetMask> edge_masks;
  for (int kp = 1; kp <= spec.ell(); ++kp) {
    if (kp == k) continue;
    int layer = spec.bound(k, kp) + 1;
    for (const SubsetMask& f : families[static_cast<std::size_t>(kp - 1)].members())
      if (f.cardinality() == layer) edge_masks.push_back(f);
  }
  return Hypergraph(SubsetMask::full_set(n), SetFamily(n, std::move(edge_masks)));
}

std::string format_coloring(const Coloring& c, bool sparse) {
  std::ostringstream out;
  out << "n=" << c.n() << " m=" << c.m() << " l=" << c.ell() << "\n";
  for (std::size_t i = 0; i < c.edge_count(); ++i) {
    if (sparse && c.color(i) == 1) continue;
    bool first = true;
    c.edge(i).for_each_element([&](int e) {
      if (!first) out << ",";
      out << e;
      first = false;
    });
    out << ": " << c.color(i) << "\n";
  }
  return out.str();
}

namespace {

int parse_int_field(std::string_view line, std::string_view key) {
  std::size_t at = line.find(key);
  if (at == std::string_view::npos)
    throw ParseError("coloring header is missing " + std::string(key));
  std::string_view rest = line.substr(at + key.size());
  std::size_t end = rest.find(' ');
  std::string_view token = end == std::string_view::npos ? rest : rest.substr(0, end);
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError("bad integer after " + std::string(key));
  return value;
}

std::string_view strip_ws(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

Coloring parse_coloring(std::string_view text, bool strict) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    std::size_t nl = text.find('\n');
    std::string_view line = nl == std::string_view::npos ? text : text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    line = strip_ws(line);
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw ParseError("coloring text is empty");
  int n = parse_int_field(lines[0], "n=");
  int m = parse_int_field(lines[0], "m=");
  int ell = parse_int_field(lines[0], "l=");
  Coloring c(n, m, ell);

  std::vector<bool> seen(c.edge_count(), false);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    std::size_t colon = line.find(':');
    if (colon == std::string_view::npos)
      throw ParseError("coloring line needs 'elements: color'");
    std::string_view elems = strip_ws(line.substr(0, colon));
    std::string_view color_token = strip_ws(line.substr(colon + 1));
    SubsetMask e(n);
    int prev = 0;
    while (!elems.empty()) {
      std::size_t comma = elems.find(',');
      std::string_view token =
          strip_ws(comma == std::string_view::npos ? elems : elems.substr(0, comma));
      elems.remove_prefix(comma == std::string_view::npos ? elems.size() : comma + 1);
      int v = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError("bad element in coloring line");
      if (v < 1 || v > n) throw ParseError("coloring element out of range 1..n");
      if (v <= prev) throw ParseError("coloring elements must be ascending");
      prev = v;
      e = e.with(v);
    }
    int color = 0;
    auto [ptr, ec] =
        std::from_chars(color_token.data(), color_token.data() + color_token.size(), color);
    if (ec != std::errc{} || ptr != color_token.data() + color_token.size())
      throw ParseError("bad color in coloring line");
    if (color < 1 || color > ell) throw ParseError("color out of range 1..l");
    if (e.cardinality() != m + 1)
      throw ParseError("coloring line subset must have m+1 elements");
    std::size_t idx = c.edge_index(e);
    if (seen[idx]) throw ParseError("duplicate edge in coloring text");
    seen[idx] = true;
    c.set_color(idx, color);
  }
  if (strict)
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (!seen[i]) throw ParseError("strict coloring is missing an edge");
  return c;
}

}  // namespace overlapx
