#include "overlapx/search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <thread>

#include "overlapx/constructions.hpp"

namespace overlapx {

namespace {

// Subsets of [n] containing none of the forbidden edges, with colors and
// the alive set packed into machine words. Requires n <= 32 and at most
// 64 forbidden edges; both hold for any coloring space a search could
// exhaust.
class WordCounter {
 public:
  WordCounter(int n, const std::vector<std::uint32_t>& forbidden) : n_(n) {
    vmask_.assign(static_cast<std::size_t>(n) + 2, 0);
    maxmask_.assign(static_cast<std::size_t>(n) + 2, 0);
    std::uint64_t bit = 1;
    for (std::uint32_t e : forbidden) {
      int max_elem = 32 - std::countl_zero(e);
      for (int v = 1; v <= n; ++v)
        if (e >> (v - 1) & 1) vmask_[static_cast<std::size_t>(v)] |= bit;
      maxmask_[static_cast<std::size_t>(max_elem)] |= bit;
      bit <<= 1;
    }
    full_alive_ = forbidden.size() == 64 ? ~0ull : (bit - 1);
  }

  std::uint64_t count() const { return rec(1, full_alive_); }

 private:
  std::uint64_t rec(int v, std::uint64_t alive) const {
    if (alive == 0) return 1ull << (n_ - v + 1);
    std::uint64_t vm = vmask_[static_cast<std::size_t>(v)];
    std::uint64_t mm = maxmask_[static_cast<std::size_t>(v)];
    std::uint64_t total = rec(v + 1, alive & ~vm);
    if ((alive & vm & mm) == 0) total += rec(v + 1, alive & ~mm);
    return total;
  }

  int n_;
  std::uint64_t full_alive_ = 0;
  std::vector<std::uint64_t> vmask_;
  std::vector<std::uint64_t> maxmask_;
};

struct ColoringSpace {
  int n = 0;
  int ell = 0;
  int m = 0;
  std::vector<std::uint32_t> edges;  // lex order, bit i-1 = element i

  // Count of sets all of whose edges are colored c or unassigned.
  std::uint64_t count_color(const std::vector<std::uint8_t>& colors, int c) const {
    std::vector<std::uint32_t> forbidden;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (colors[i] != 0 && colors[i] != c) forbidden.push_back(edges[i]);
    return WordCounter(n, forbidden).count();
  }

  BigInt product_over_colors(const std::vector<std::uint8_t>& colors) const {
    BigInt p = 1;
    for (int c = 1; c <= ell; ++c)
      p *= BigInt(static_cast<unsigned long>(count_color(colors, c)));
    return p;
  }
};

// Shared incumbent with monotone-max semantics; the optimum is
// independent of update order.
class Incumbent {
 public:
  bool prunable(const BigInt& bound) {
    std::lock_guard<std::mutex> lock(mu_);
    return have_ && bound <= value_;
  }

  void offer(const BigInt& value, const std::vector<std::uint8_t>& assignment) {
    std::lock_guard<std::mutex> lock(mu_);
    if (!have_ || value > value_) {
      have_ = true;
      value_ = value;
      assignment_ = assignment;
    }
  }

  bool have() const { return have_; }
  BigInt value() {
    std::lock_guard<std::mutex> lock(mu_);
    return value_;
  }
  std::vector<std::uint8_t> assignment() {
    std::lock_guard<std::mutex> lock(mu_);
    return assignment_;
  }

 private:
  std::mutex mu_;
  bool have_ = false;
  BigInt value_ = 0;
  std::vector<std::uint8_t> assignment_;
};

struct ExactSearcher {
  ColoringSpace space;
  SearchOptions opts;
  Incumbent incumbent;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> budget_hit{false};

  bool charge_node() {
    std::uint64_t seen = nodes.fetch_add(1) + 1;
    if (opts.node_budget != 0 && seen > opts.node_budget) {
      budget_hit.store(true);
      return false;
    }
    return true;
  }

  void dfs(std::vector<std::uint8_t>& colors, std::size_t depth) {
    if (budget_hit.load(std::memory_order_relaxed)) return;
    if (!charge_node()) return;
    if (depth == space.edges.size()) {
      incumbent.offer(space.product_over_colors(colors), colors);
      return;
    }
    if (opts.prune && incumbent.prunable(space.product_over_colors(colors))) return;
    int first_limit = (depth == 0 && opts.fix_first_color) ? 1 : space.ell;
    for (int c = 1; c <= first_limit; ++c) {
      colors[depth] = static_cast<std::uint8_t>(c);
      dfs(colors, depth + 1);
      colors[depth] = 0;
    }
  }

  // Lexicographically first coloring attaining `target`; deterministic
  // regardless of how the optimum was found.
  bool find_witness(std::vector<std::uint8_t>& colors, std::size_t depth,
                    const BigInt& target) {
    if (depth == space.edges.size())
      return space.product_over_colors(colors) == target;
    if (space.product_over_colors(colors) < target) return false;
    for (int c = 1; c <= space.ell; ++c) {
      colors[depth] = static_cast<std::uint8_t>(c);
      if (find_witness(colors, depth + 1, target)) return true;
      colors[depth] = 0;
    }
    return false;
  }
};

Coloring coloring_from_assignment(int n, int m, int ell,
                                  const std::vector<std::uint8_t>& assignment) {
  Coloring c(n, m, ell);
  for (std::size_t i = 0; i < assignment.size(); ++i)
    c.set_color(i, assignment[i] == 0 ? 1 : assignment[i]);
  return c;
}

}  // namespace

SearchReport exact_search(int n, int ell, int m, const SearchOptions& opts) {
  if (n < 0 || n > 32) throw CapacityError("exact search supports n <= 32");
  if (ell < 2 || ell > 32) throw PreconditionError("exact search requires 2 <= l <= 32");
  if (m < 0) throw PreconditionError("m must be non-negative");
  auto t0 = std::chrono::steady_clock::now();

  ExactSearcher searcher;
  searcher.space.n = n;
  searcher.space.ell = ell;
  searcher.space.m = m;
  searcher.opts = opts;
  for_each_subset_of_size(n, m + 1, [&](const SubsetMask& e) {
    searcher.space.edges.push_back(static_cast<std::uint32_t>(e.lo()));
  });
  if (searcher.space.edges.size() > 64)
    throw CapacityError("coloring space too large: more than 64 edges");

  const std::size_t edge_count = searcher.space.edges.size();
  int workers = std::max(1, opts.threads);
  if (edge_count == 0 || workers == 1) {
    std::vector<std::uint8_t> colors(edge_count, 0);
    searcher.dfs(colors, 0);
  } else {
    // Branch-parallel over the first edge's colors.
    int first_limit = opts.fix_first_color ? 1 : ell;
    std::atomic<int> next_color{1};
    std::vector<std::thread> pool;
    int spawn = std::min(workers, first_limit);
    for (int t = 0; t < spawn; ++t) {
      pool.emplace_back([&]() {
        for (;;) {
          int c = next_color.fetch_add(1);
          if (c > first_limit) return;
          std::vector<std::uint8_t> colors(edge_count, 0);
          colors[0] = static_cast<std::uint8_t>(c);
          searcher.dfs(colors, 1);
        }
      });
    }
    for (std::thread& th : pool) th.join();
  }

  SearchReport report;
  report.nodes_visited = searcher.nodes.load();
  report.exact = !searcher.budget_hit.load();
  report.optimum = searcher.incumbent.value();
  report.bound_used = daykin_chain_bound(n, OverlapSpec::uniform(ell, m));

  std::vector<std::uint8_t> witness = searcher.incumbent.assignment();
  if (report.exact) {
    std::vector<std::uint8_t> canonical(edge_count, 0);
    if (searcher.find_witness(canonical, 0, report.optimum)) witness = canonical;
  }
  if (searcher.incumbent.have())
    report.witness_coloring = coloring_from_assignment(n, m, ell, witness);
  report.wall_time = std::chrono::steady_clock::now() - t0;
  return report;
}

namespace {

// Downsets of 2^[n] as bitmasks over the subset lattice, ascending.
std::vector<std::uint32_t> enumerate_downsets(int n) {
  const std::uint32_t subsets = 1u << n;
  std::vector<std::uint32_t> parents(subsets, 0);
  for (std::uint32_t s = 0; s < subsets; ++s) {
    std::uint32_t t = s;
    while (t) {
      std::uint32_t low = t & (~t + 1);
      parents[s] |= 1u << (s ^ low);
      t ^= low;
    }
  }
  std::vector<std::uint32_t> downs;
  const std::uint64_t families = std::uint64_t{1} << subsets;
  for (std::uint64_t fam = 0; fam < families; ++fam) {
    bool ok = true;
    std::uint32_t f = static_cast<std::uint32_t>(fam);
    for (std::uint32_t s = 0; s < subsets && ok; ++s)
      if ((f >> s & 1) && (f & parents[s]) != parents[s]) ok = false;
    if (ok) downs.push_back(f);
  }
  return downs;
}

SetFamily family_from_lattice_mask(int n, std::uint32_t fam) {
  std::vector<SubsetMask> members;
  for (std::uint32_t s = 0; s < (1u << n); ++s)
    if (fam >> s & 1) members.push_back(SubsetMask::from_words(n, s, 0));
  return SetFamily::from_sorted_unique(n, std::move(members));
}

}  // namespace

SearchReport family_bruteforce(int n, const OverlapSpec& spec) {
  if (n < 0 || n > 4)
    throw CapacityError("downset-tuple enumeration supports n <= 4");
  if (spec.ell() > 3)
    throw CapacityError("downset-tuple enumeration supports l <= 3");
  auto t0 = std::chrono::steady_clock::now();

  const std::vector<std::uint32_t> downs = enumerate_downsets(n);
  const std::size_t count = downs.size();
  std::vector<int> sizes(count);
  for (std::size_t i = 0; i < count; ++i)
    sizes[i] = std::popcount(downs[i]);

  // Member lists per downset, for the pairwise compatibility tables.
  std::vector<std::vector<std::uint32_t>> members(count);
  for (std::size_t i = 0; i < count; ++i)
    for (std::uint32_t s = 0; s < (1u << n); ++s)
      if (downs[i] >> s & 1) members[i].push_back(s);

  // compat[m][i][j]: every cross-intersection has size <= m.
  std::vector<int> distinct_bounds = spec.bounds();
  std::sort(distinct_bounds.begin(), distinct_bounds.end());
  distinct_bounds.erase(std::unique(distinct_bounds.begin(), distinct_bounds.end()),
                        distinct_bounds.end());
  std::vector<std::vector<std::uint8_t>> compat_by_bound;
  auto compat_table = [&](int bound) -> const std::vector<std::uint8_t>& {
    std::size_t slot =
        static_cast<std::size_t>(std::lower_bound(distinct_bounds.begin(),
                                                  distinct_bounds.end(), bound) -
                                 distinct_bounds.begin());
    return compat_by_bound[slot];
  };
  for (int bound : distinct_bounds) {
    std::vector<std::uint8_t> table(count * count, 0);
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = i; j < count; ++j) {
        bool ok = true;
        for (std::uint32_t a : members[i]) {
          for (std::uint32_t b : members[j])
            if (std::popcount(a & b) > bound) {
              ok = false;
              break;
            }
          if (!ok) break;
        }
        table[i * count + j] = table[j * count + i] = ok ? 1 : 0;
      }
    compat_by_bound.push_back(std::move(table));
  }

  const int ell = spec.ell();
  std::vector<std::size_t> choice(static_cast<std::size_t>(ell), 0);
  std::vector<std::size_t> best_choice;
  BigInt best = -1;
  std::uint64_t nodes = 0;

  auto rec = [&](auto&& self, int k, long partial) -> void {
    ++nodes;
    if (k == ell) {
      BigInt value(partial);
      if (value > best) {
        best = value;
        best_choice = choice;
      }
      return;
    }
    for (std::size_t i = 0; i < count; ++i) {
      bool ok = true;
      for (int kp = 0; kp < k && ok; ++kp) {
        const std::vector<std::uint8_t>& table = compat_table(spec.bound(kp + 1, k + 1));
        ok = table[choice[static_cast<std::size_t>(kp)] * count + i] != 0;
      }
      if (!ok) continue;
      choice[static_cast<std::size_t>(k)] = i;
      self(self, k + 1, partial * sizes[i]);
    }
  };
  rec(rec, 0, 1);

  SearchReport report;
  report.optimum = best;
  report.nodes_visited = nodes;
  report.exact = true;
  report.bound_used = daykin_chain_bound(n, spec);
  for (std::size_t idx : best_choice)
    report.witness_families.push_back(family_from_lattice_mask(n, downs[idx]));
  report.wall_time = std::chrono::steady_clock::now() - t0;
  return report;
}

namespace {

BigInt count_single_color(const Coloring& c, int color) {
  std::vector<SubsetMask> forbidden;
  for (std::size_t i = 0; i < c.edge_count(); ++i)
    if (c.color(i) != color) forbidden.push_back(c.edge(i));
  return count_subsets_avoiding(SubsetMask::full_set(c.n()), forbidden);
}

}  // namespace

SearchReport local_search(int n, int ell, int m, std::uint64_t seed,
                          std::uint64_t iterations) {
  auto t0 = std::chrono::steady_clock::now();
  OverlapSpec spec = OverlapSpec::uniform(ell, m);

  PartitionOptimum opt = optimize_partition(n, spec);
  PartitionLayout layout(opt.alloc);
  std::vector<SetFamily> families = octopus_build(layout);
  families = maximal_completion(std::move(families), spec);
  Coloring current = coloring_from_families(families, spec);

  std::vector<BigInt> counts = count_monochromatic(current);
  BigInt value = 1;
  for (const BigInt& k : counts) value *= k;
  const BigInt seed_value = value;

  // Plain 64-bit xorshift so move order is reproducible everywhere.
  std::uint64_t state = seed ^ 0x9e3779b97f4a7c15ull;
  auto next_random = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };

  std::vector<std::pair<std::size_t, int>> moves;
  for (std::size_t e = 0; e < current.edge_count(); ++e)
    for (int c = 1; c <= ell; ++c) moves.emplace_back(e, c);

  std::uint64_t accepted = 0;
  std::uint64_t evaluations = 0;
  while (accepted < iterations) {
    for (std::size_t i = moves.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(next_random() % i);
      std::swap(moves[i - 1], moves[j]);
    }
    bool improved = false;
    for (const auto& [e, c] : moves) {
      int old = current.color(e);
      if (c == old) continue;
      current.set_color(e, c);
      BigInt new_old_count = count_single_color(current, old);
      BigInt new_c_count = count_single_color(current, c);
      ++evaluations;
      BigInt new_value = value / counts[static_cast<std::size_t>(old - 1)] /
                         counts[static_cast<std::size_t>(c - 1)] * new_old_count *
                         new_c_count;
      if (new_value > value) {
        counts[static_cast<std::size_t>(old - 1)] = new_old_count;
        counts[static_cast<std::size_t>(c - 1)] = new_c_count;
        value = new_value;
        ++accepted;
        improved = true;
        break;
      }
      current.set_color(e, old);
    }
    if (!improved) break;
  }

  SearchReport report;
  report.optimum = value;
  report.witness_coloring = current;
  report.nodes_visited = evaluations;
  report.bound_used = seed_value;
  report.exact = false;
  report.wall_time = std::chrono::steady_clock::now() - t0;
  return report;
}

BigInt daykin_chain_bound(int n, const OverlapSpec& spec) {
  if (n < 0) throw PreconditionError("n must be non-negative");
  const int ell = spec.ell();
  std::vector<int> order(static_cast<std::size_t>(ell));
  std::iota(order.begin(), order.end(), 1);

  auto chain_value = [&](const std::vector<int>& perm) {
    BigInt product = 1;
    for (int k = 1; k <= ell - 1; ++k) {
      long exponent = 0;
      for (int kp = 1; kp <= k; ++kp)
        exponent += spec.bound(perm[static_cast<std::size_t>(kp - 1)],
                               perm[static_cast<std::size_t>(k)]);
      product *= binomial_sum(static_cast<unsigned long>(n),
                              static_cast<unsigned long>(exponent));
    }
    return product;
  };

  BigInt best = chain_value(order);
  if (ell <= 5) {
    while (std::next_permutation(order.begin(), order.end())) {
      BigInt v = chain_value(order);
      if (v < best) best = v;
    }
  }
  return best * pow2(static_cast<unsigned long>(n));
}

}  // namespace overlapx
