#include "overlapx/ineq.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "overlapx/random.hpp"

namespace overlapx {

namespace {

Rational size_rational(const SetFamily& f) {
  return Rational(static_cast<unsigned long>(f.size()));
}

IneqVerdict verdict_of(Rational lhs, Rational rhs, std::string witness_on_failure) {
  IneqVerdict v;
  v.holds = lhs <= rhs;
  v.lhs = std::move(lhs);
  v.rhs = std::move(rhs);
  if (!v.holds) v.witness = std::move(witness_on_failure);
  return v;
}

std::string describe_families(std::span<const SetFamily> families) {
  std::ostringstream out;
  for (std::size_t i = 0; i < families.size(); ++i) {
    out << "family " << (i + 1) << ":\n" << format_family(families[i]);
  }
  return out.str();
}

// One RHS term of the multi-family correlation inequality: the join over
// all k-subsets S of [l] of the meet over S.
SetFamily rinott_term(std::span<const SetFamily> families, int k) {
  const int ell = static_cast<int>(families.size());
  std::vector<SetFamily> meets;
  for_each_subset_of_size(ell, k, [&](const SubsetMask& s) {
    SetFamily acc(families[0].ground_size());
    bool first = true;
    s.for_each_element([&](int idx) {
      const SetFamily& f = families[static_cast<std::size_t>(idx - 1)];
      if (first) {
        acc = f;
        first = false;
      } else {
        acc = meet(acc, f);
      }
    });
    meets.push_back(std::move(acc));
  });
  SetFamily term = meets.front();
  for (std::size_t i = 1; i < meets.size(); ++i) {
    if (term.size() * meets[i].size() > (std::size_t{1} << 28))
      throw CapacityError("intermediate join too large in the correlation check");
    term = join(term, meets[i]);
  }
  return term;
}

}  // namespace

IneqVerdict check_harris_kleitman(const SetFamily& a, const SetFamily& b) {
  if (!is_down_closed(a)) throw PreconditionError("first family is not down-closed");
  if (!is_down_closed(b)) throw PreconditionError("second family is not down-closed");
  const SetFamily both[] = {a, b};
  Rational lhs = size_rational(a) * size_rational(b);
  Rational rhs = Rational(pow2(static_cast<unsigned long>(a.ground_size()))) *
                 size_rational(meet(a, b));
  return verdict_of(std::move(lhs), std::move(rhs), describe_families(both));
}

IneqVerdict check_daykin(const SetFamily& a, const SetFamily& b) {
  const SetFamily both[] = {a, b};
  Rational lhs = size_rational(a) * size_rational(b);
  Rational rhs = size_rational(join(a, b)) * size_rational(meet(a, b));
  return verdict_of(std::move(lhs), std::move(rhs), describe_families(both));
}

IneqVerdict check_rinott_saks(std::span<const SetFamily> families) {
  if (families.empty() || families.size() > 5)
    throw PreconditionError("correlation check supports 1 <= l <= 5 families");
  for (const SetFamily& f : families)
    if (f.ground_size() != families[0].ground_size())
      throw PreconditionError("ground-size mismatch between families");
  Rational lhs = 1;
  for (const SetFamily& f : families) lhs *= size_rational(f);
  Rational rhs = 1;
  for (int k = 1; k <= static_cast<int>(families.size()); ++k)
    rhs *= size_rational(rinott_term(families, k));
  return verdict_of(std::move(lhs), std::move(rhs), describe_families(families));
}

IneqVerdict check_rinott_saks_biased(std::span<const SetFamily> families, const Rational& p) {
  if (families.empty() || families.size() > 5)
    throw PreconditionError("correlation check supports 1 <= l <= 5 families");
  if (p < 0 || p > 1) throw PreconditionError("biased measure requires p in [0, 1]");
  for (const SetFamily& f : families)
    if (f.ground_size() != families[0].ground_size())
      throw PreconditionError("ground-size mismatch between families");
  Rational lhs = 1;
  for (const SetFamily& f : families) lhs *= biased_measure(f, p);
  Rational rhs = 1;
  for (int k = 1; k <= static_cast<int>(families.size()); ++k)
    rhs *= biased_measure(rinott_term(families, k), p);
  std::ostringstream witness;
  witness << "p=" << p << "\n" << describe_families(families);
  return verdict_of(std::move(lhs), std::move(rhs), witness.str());
}

BigInt frankl_bound(int n, int m) {
  if (n < 0 || m < 0 || m > n) throw PreconditionError("frankl bound requires 0 <= m <= n");
  return pow2(static_cast<unsigned long>(n)) *
         binomial_sum(static_cast<unsigned long>(n), static_cast<unsigned long>(m));
}

std::vector<SubsetMask> maximal_matching(const Hypergraph& h,
                                         std::span<const std::size_t> order) {
  const std::vector<SubsetMask>& edges = h.edges.members();
  if (order.size() != edges.size())
    throw PreconditionError("matching order must permute the edge list");
  SubsetMask taken(h.vertices.ground_size());
  std::vector<SubsetMask> matching;
  for (std::size_t idx : order) {
    if (idx >= edges.size()) throw PreconditionError("matching order index out of range");
    const SubsetMask& e = edges[idx];
    if (!e.intersects(taken)) {
      matching.push_back(e);
      taken = taken.unite(e);
    }
  }
  return matching;
}

namespace {

struct CoverSearch {
  std::vector<SubsetMask> edges;
  int n = 0;
  SubsetMask best;
  int best_size = 0;

  void run(SubsetMask chosen, int chosen_size) {
    if (chosen_size >= best_size) return;
    // first uncovered edge
    const SubsetMask* open = nullptr;
    for (const SubsetMask& e : edges)
      if (!e.intersects(chosen)) {
        open = &e;
        break;
      }
    if (open == nullptr) {
      best = chosen;
      best_size = chosen_size;
      return;
    }
    open->for_each_element([&](int v) { run(chosen.with(v), chosen_size + 1); });
  }
};

}  // namespace

SubsetMask min_cover(const Hypergraph& h) {
  const int n = h.vertices.ground_size();
  if (h.vertices.cardinality() > 24)
    throw CapacityError("exact covering supports at most 24 vertices");
  for (const SubsetMask& e : h.edges.members())
    if (e.empty()) throw PreconditionError("empty edge cannot be covered");
  CoverSearch search;
  search.edges = h.edges.members();
  search.n = n;
  search.best = h.vertices;
  search.best_size = h.vertices.cardinality() + 1;
  search.run(SubsetMask(n), 0);
  return search.best;
}

IneqVerdict check_cover_matching(const Hypergraph& h, int t, int random_orders,
                                 std::uint64_t seed) {
  for (const SubsetMask& e : h.edges.members())
    if (e.cardinality() < 1 || e.cardinality() > t)
      throw PreconditionError("edge size outside 1..t");
  const std::size_t edge_count = h.edges.size();
  int cover_size = min_cover(h).cardinality();

  std::vector<std::size_t> order(edge_count);
  for (std::size_t i = 0; i < edge_count; ++i) order[i] = i;
  std::size_t smallest_matching = maximal_matching(h, order).size();

  SplitMix64 rng(seed);
  for (int r = 0; r < random_orders; ++r) {
    for (std::size_t i = edge_count; i > 1; --i)
      std::swap(order[i - 1], order[rng.below(i)]);
    smallest_matching = std::min(smallest_matching, maximal_matching(h, order).size());
  }

  Rational lhs(static_cast<unsigned long>(cover_size));
  Rational rhs = Rational(t) * Rational(static_cast<unsigned long>(smallest_matching));
  std::ostringstream witness;
  witness << "cover=" << cover_size << " smallest_matching=" << smallest_matching
          << " t=" << t << "\n"
          << format_family(h.edges);
  return verdict_of(std::move(lhs), std::move(rhs), witness.str());
}

double EntropyReport::marginal_sum() const {
  double s = 0;
  for (double b : marginal_bits) s += b;
  return s;
}

EntropyReport empirical_entropy(const SetFamily& f) {
  if (f.empty()) throw PreconditionError("entropy of an empty family");
  EntropyReport report;
  report.total_bits = std::log2(static_cast<double>(f.size()));
  report.marginal_bits.reserve(static_cast<std::size_t>(f.ground_size()));
  for (int i = 1; i <= f.ground_size(); ++i) {
    SubsetMask singleton = SubsetMask(f.ground_size()).with(i);
    report.marginal_bits.push_back(binary_entropy(degree(f, singleton)));
  }
  return report;
}

double binary_entropy(const Rational& p) {
  if (p < 0 || p > 1) throw PreconditionError("binary entropy requires p in [0, 1]");
  double x = p.get_d();
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double cross_entropy(std::span<const Rational> p, std::span<const Rational> q) {
  if (p.size() != q.size())
    throw PreconditionError("distributions must have the same length");
  Rational psum = 0, qsum = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0 || q[i] < 0) throw PreconditionError("negative probability");
    if ((p[i] > 0) != (q[i] > 0)) throw PreconditionError("support mismatch");
    psum += p[i];
    qsum += q[i];
  }
  if (psum != 1 || qsum != 1) throw PreconditionError("distributions must sum to 1");
  double h = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0) h -= p[i].get_d() * std::log2(q[i].get_d());
  return h;
}

DegreeProduct degree_product(std::span<const SetFamily> families, const OverlapSpec& spec,
                             std::span<const int> indices,
                             std::span<const SubsetMask> sets) {
  if (families.size() != static_cast<std::size_t>(spec.ell()))
    throw PreconditionError("family count does not match the spec arity");
  if (indices.size() != sets.size())
    throw PreconditionError("one set per selected family is required");
  for (std::size_t i = 0; i < indices.size(); ++i) {
    int k = indices[i];
    if (k < 1 || k > spec.ell()) throw PreconditionError("family index out of range");
    if (!families[static_cast<std::size_t>(k - 1)].contains(sets[i]))
      throw PreconditionError("selected set is not a member of its family");
  }
  DegreeProduct result;
  result.product = 1;
  for (std::size_t i = 0; i < indices.size(); ++i)
    result.product *= degree(families[static_cast<std::size_t>(indices[i] - 1)], sets[i]);
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = i + 1; j < indices.size(); ++j)
      result.exponent += sets[i].intersection_size(sets[j]);
  return result;
}

std::vector<SetFamily> prune_two_supports(std::span<const SetFamily> families,
                                          const OverlapSpec& spec) {
  if (families.size() != static_cast<std::size_t>(spec.ell()))
    throw PreconditionError("family count does not match the spec arity");
  for (const SetFamily& f : families)
    if (f.empty()) throw PreconditionError("pruning requires nonempty families");
  const int n = families[0].ground_size();
  const std::size_t ell = families.size();

  std::vector<SubsetMask> banned(ell, SubsetMask(n));  // W_k per family
  for (int x = 1; x <= n; ++x) {
    SubsetMask singleton = SubsetMask(n).with(x);
    std::vector<std::pair<Rational, int>> ranked;
    ranked.reserve(ell);
    for (std::size_t k = 0; k < ell; ++k)
      ranked.emplace_back(degree(families[k], singleton), static_cast<int>(k));
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      return a.first > b.first;  // degree desc, index asc on ties
    });
    for (std::size_t pos = 2; pos < ranked.size(); ++pos) {
      int k = ranked[pos].second;
      banned[static_cast<std::size_t>(k)] =
          banned[static_cast<std::size_t>(k)].with(x);
    }
  }

  std::vector<SetFamily> out;
  out.reserve(ell);
  for (std::size_t k = 0; k < ell; ++k)
    out.push_back(trace_avoiding(families[k], banned[k]));
  return out;
}

SubsetMask residual_set(std::span<const SetFamily> families) {
  if (families.empty()) throw PreconditionError("residual set needs at least one family");
  const int n = families[0].ground_size();
  SubsetMask covered(n);
  for (const SetFamily& f : families) {
    if (f.ground_size() != n)
      throw PreconditionError("ground-size mismatch between families");
    covered = covered.unite(max_cardinality_set(f));
  }
  return covered.complement();
}

namespace {

IneqVerdict run_one_trial(const FuzzOptions& opts, std::uint64_t trial) {
  SplitMix64 rng(opts.seed * 0x2545f4914f6cdd1dull + trial + 1);
  switch (opts.kind) {
    case FuzzKind::kHarrisKleitman: {
      int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(opts.max_n)));
      SetFamily a = random_downset(rng, n, 6);
      SetFamily b = random_downset(rng, n, 6);
      return check_harris_kleitman(a, b);
    }
    case FuzzKind::kDaykin: {
      int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(opts.max_n)));
      SetFamily a = random_family(rng, n, 48);
      SetFamily b = random_family(rng, n, 48);
      return check_daykin(a, b);
    }
    case FuzzKind::kRinottSaks: {
      int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(opts.max_n)));
      std::vector<SetFamily> fams;
      for (int k = 0; k < opts.ell; ++k) fams.push_back(random_family(rng, n, 32));
      return check_rinott_saks(fams);
    }
    case FuzzKind::kRinottSaksBiased: {
      int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(opts.max_n)));
      std::vector<SetFamily> fams;
      for (int k = 0; k < opts.ell; ++k) fams.push_back(random_family(rng, n, 32));
      std::vector<Rational> ps = opts.ps;
      if (ps.empty())
        ps = {make_rational(1, 4), make_rational(1, 3), make_rational(3, 4)};
      return check_rinott_saks_biased(fams, ps[trial % ps.size()]);
    }
    case FuzzKind::kCoverMatching: {
      int v = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(opts.max_n)));
      Hypergraph h = random_hypergraph(rng, v, opts.max_edge_size, 24);
      return check_cover_matching(h, opts.max_edge_size, 10, rng.next());
    }
  }
  throw PreconditionError("unknown fuzz kind");
}

}  // namespace

FuzzSummary fuzz_inequality(const FuzzOptions& opts) {
  FuzzSummary summary;
  summary.trials = opts.trials;
  const int workers = std::max(1, opts.threads);

  struct Partial {
    std::uint64_t failures = 0;
    std::uint64_t first_trial = 0;
    std::string witness;
    bool any = false;
  };
  std::vector<Partial> partials(static_cast<std::size_t>(workers));

  auto worker = [&](int w) {
    Partial& part = partials[static_cast<std::size_t>(w)];
    for (std::uint64_t t = static_cast<std::uint64_t>(w); t < opts.trials;
         t += static_cast<std::uint64_t>(workers)) {
      IneqVerdict v = run_one_trial(opts, t);
      if (!v.holds) {
        ++part.failures;
        if (!part.any || t < part.first_trial) {
          part.any = true;
          part.first_trial = t;
          std::ostringstream w_out;
          w_out << "trial=" << t << " lhs=" << v.lhs << " rhs=" << v.rhs << "\n"
                << v.witness;
          part.witness = w_out.str();
        }
      }
    }
  };

  if (workers == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker, w);
    for (std::thread& th : pool) th.join();
  }

  bool any = false;
  for (const Partial& part : partials) {
    summary.failures += part.failures;
    if (part.any && (!any || part.first_trial < summary.first_failure_trial)) {
      any = true;
      summary.first_failure_trial = part.first_trial;
      summary.first_witness = part.witness;
    }
  }
  return summary;
}

}  // namespace overlapx
