#include "overlapx/family.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <unordered_set>

#include "overlapx/detail/bits.hpp"

namespace overlapx {

namespace {

using detail::key_of;
using detail::kLatticeBitsetMaxN;
using detail::LatticeBitset;
using detail::mask_of;
using detail::u128;
using detail::U128Hash;

void require_same_ground(const SetFamily& a, const SetFamily& b) {
  if (a.ground_size() != b.ground_size())
    throw PreconditionError("ground-size mismatch between families");
}

void require_same_ground(const SetFamily& f, const SubsetMask& s) {
  if (f.ground_size() != s.ground_size())
    throw PreconditionError("ground-size mismatch between family and mask");
}

SetFamily dedup_into_family(int n, std::vector<SubsetMask>&& raw) {
  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  return SetFamily::from_sorted_unique(n, std::move(raw));
}

enum class LatticeOp { kMeet, kJoin };

SetFamily pairwise_lattice(const SetFamily& a, const SetFamily& b, LatticeOp op) {
  require_same_ground(a, b);
  const int n = a.ground_size();
  if (a.empty() || b.empty()) return SetFamily(n);
  if (n <= kLatticeBitsetMaxN) {
    LatticeBitset seen(n);
    for (const SubsetMask& x : a.members())
      for (const SubsetMask& y : b.members()) {
        std::uint64_t v = op == LatticeOp::kMeet ? (x.lo() & y.lo()) : (x.lo() | y.lo());
        seen.insert(v);
      }
    return SetFamily::from_sorted_unique(n, seen.collect(n));
  }
  std::vector<SubsetMask> raw;
  raw.reserve(a.size() * b.size());
  for (const SubsetMask& x : a.members())
    for (const SubsetMask& y : b.members())
      raw.push_back(op == LatticeOp::kMeet ? x.intersect(y) : x.unite(y));
  return dedup_into_family(n, std::move(raw));
}

}  // namespace

SetFamily::SetFamily(int ground_size) : ground_size_(ground_size) {
  if (ground_size < 0 || ground_size > kMaxGroundSize)
    throw PreconditionError("ground size must be in [0, 128]");
}

SetFamily::SetFamily(int ground_size, std::vector<SubsetMask> members)
    : SetFamily(ground_size) {
  for (const SubsetMask& m : members)
    if (m.ground_size() != ground_size)
      throw PreconditionError("family member with mismatched ground size");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  members_ = std::move(members);
}

SetFamily SetFamily::from_sorted_unique(int ground_size, std::vector<SubsetMask> members) {
  SetFamily f(ground_size);
  f.members_ = std::move(members);
  return f;
}

SetFamily SetFamily::power_set(int ground_size, std::size_t member_limit) {
  if (ground_size > 60 || (std::size_t{1} << ground_size) > member_limit)
    throw CapacityError("power set exceeds the member limit");
  std::vector<SubsetMask> members;
  members.reserve(std::size_t{1} << ground_size);
  std::uint64_t count = 1ull << ground_size;
  for (std::uint64_t v = 0; v < count; ++v)
    members.push_back(SubsetMask::from_words(ground_size, v, 0));
  return from_sorted_unique(ground_size, std::move(members));
}

SetFamily SetFamily::sets_of_size_at_most(int ground_size, int k, const SubsetMask& within) {
  if (within.ground_size() != ground_size)
    throw PreconditionError("ground-size mismatch between family and mask");
  if (k < 0) throw PreconditionError("negative cardinality bound");
  std::vector<SubsetMask> raw;
  for_each_submask(within, [&](const SubsetMask& s) {
    if (s.cardinality() <= k) raw.push_back(s);
  });
  return dedup_into_family(ground_size, std::move(raw));
}

bool SetFamily::contains(const SubsetMask& s) const {
  return std::binary_search(members_.begin(), members_.end(), s);
}

SetFamily down_closure(const SetFamily& f, std::size_t member_limit) {
  const int n = f.ground_size();
  std::vector<SubsetMask> stack(f.members());
  std::size_t count = stack.size();
  if (count > member_limit) throw CapacityError("down-closure exceeds the member limit");

  if (n <= kLatticeBitsetMaxN) {
    LatticeBitset seen(n);
    for (const SubsetMask& m : stack) seen.insert(m.lo());
    while (!stack.empty()) {
      SubsetMask s = stack.back();
      stack.pop_back();
      s.for_each_element([&](int e) {
        SubsetMask t = s.without(e);
        if (seen.insert(t.lo())) {
          if (++count > member_limit)
            throw CapacityError("down-closure exceeds the member limit");
          stack.push_back(t);
        }
      });
    }
    return SetFamily::from_sorted_unique(n, seen.collect(n));
  }

  std::unordered_set<u128, U128Hash> seen;
  for (const SubsetMask& m : stack) seen.insert(key_of(m));
  while (!stack.empty()) {
    SubsetMask s = stack.back();
    stack.pop_back();
    s.for_each_element([&](int e) {
      SubsetMask t = s.without(e);
      if (seen.insert(key_of(t)).second) {
        if (++count > member_limit)
          throw CapacityError("down-closure exceeds the member limit");
        stack.push_back(t);
      }
    });
  }
  std::vector<SubsetMask> raw;
  raw.reserve(seen.size());
  for (u128 k : seen) raw.push_back(mask_of(n, k));
  return dedup_into_family(n, std::move(raw));
}

SetFamily meet(const SetFamily& a, const SetFamily& b) {
  return pairwise_lattice(a, b, LatticeOp::kMeet);
}

SetFamily join(const SetFamily& a, const SetFamily& b) {
  return pairwise_lattice(a, b, LatticeOp::kJoin);
}

SetFamily restrict_to(const SetFamily& f, const SubsetMask& b) {
  require_same_ground(f, b);
  std::vector<SubsetMask> raw;
  raw.reserve(f.size());
  for (const SubsetMask& m : f.members()) raw.push_back(m.intersect(b));
  return dedup_into_family(f.ground_size(), std::move(raw));
}

SetFamily trace(const SetFamily& f, const SubsetMask& a, const SubsetMask& b) {
  require_same_ground(f, a);
  require_same_ground(f, b);
  if (!a.subset_of(b)) throw PreconditionError("trace requires A to be a subset of B");
  std::vector<SubsetMask> raw;
  for (const SubsetMask& m : f.members())
    if (m.intersect(b) == a) raw.push_back(m.minus(b));
  return dedup_into_family(f.ground_size(), std::move(raw));
}

SetFamily trace_containing(const SetFamily& f, const SubsetMask& a) {
  return trace(f, a, a);
}

SetFamily trace_avoiding(const SetFamily& f, const SubsetMask& a) {
  return trace(f, SubsetMask(f.ground_size()), a);
}

Rational degree(const SetFamily& f, const SubsetMask& s) {
  require_same_ground(f, s);
  if (f.empty()) throw PreconditionError("degree of a set in an empty family");
  std::size_t count = 0;
  for (const SubsetMask& m : f.members())
    if (s.subset_of(m)) ++count;
  return make_rational(BigInt(static_cast<unsigned long>(count)),
                       BigInt(static_cast<unsigned long>(f.size())));
}

SubsetMask support(const SetFamily& f) {
  SubsetMask u(f.ground_size());
  for (const SubsetMask& m : f.members()) u = u.unite(m);
  return u;
}

SubsetMask max_cardinality_set(const SetFamily& f) {
  if (f.empty()) throw PreconditionError("max_cardinality_set of an empty family");
  SubsetMask best = f.members().front();
  int best_card = best.cardinality();
  for (const SubsetMask& m : f.members()) {
    int c = m.cardinality();
    if (c > best_card) {
      best = m;
      best_card = c;
    }
  }
  return best;
}

Rational biased_measure(const SetFamily& f, const Rational& p) {
  if (p < 0 || p > 1) throw PreconditionError("biased measure requires p in [0, 1]");
  const int n = f.ground_size();
  std::vector<unsigned long> by_card(static_cast<std::size_t>(n) + 1, 0);
  for (const SubsetMask& m : f.members())
    ++by_card[static_cast<std::size_t>(m.cardinality())];
  Rational q = Rational(1) - p;
  // p^c (1-p)^(n-c), built incrementally over c
  std::vector<Rational> weight(static_cast<std::size_t>(n) + 1);
  weight[0] = rational_pow(q, static_cast<unsigned long>(n));
  for (int c = 1; c <= n; ++c) {
    if (q == 0) {
      weight[static_cast<std::size_t>(c)] =
          c == n ? rational_pow(p, static_cast<unsigned long>(n)) : Rational(0);
    } else {
      weight[static_cast<std::size_t>(c)] =
          weight[static_cast<std::size_t>(c - 1)] * p / q;
    }
  }
  Rational total = 0;
  for (int c = 0; c <= n; ++c)
    if (by_card[static_cast<std::size_t>(c)] != 0)
      total += Rational(by_card[static_cast<std::size_t>(c)]) *
               weight[static_cast<std::size_t>(c)];
  return total;
}

bool is_down_closed(const SetFamily& f) {
  for (const SubsetMask& m : f.members()) {
    bool ok = true;
    m.for_each_element([&](int e) {
      if (ok && !f.contains(m.without(e))) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

BigInt size_product(std::span<const SetFamily> families) {
  BigInt p = 1;
  for (const SetFamily& f : families) p *= static_cast<unsigned long>(f.size());
  return p;
}

std::string format_family(const SetFamily& f) {
  std::ostringstream out;
  out << "n=" << f.ground_size() << "\n";
  for (const SubsetMask& m : f.members()) {
    if (m.empty()) {
      out << "-\n";
      continue;
    }
    bool first = true;
    m.for_each_element([&](int e) {
      if (!first) out << ",";
      out << e;
      first = false;
    });
    out << "\n";
  }
  return out.str();
}

namespace {

int parse_int(std::string_view token, std::string_view what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError("bad integer in " + std::string(what) + ": '" + std::string(token) + "'");
  return value;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

SetFamily parse_family(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    std::size_t nl = text.find('\n');
    std::string_view line = nl == std::string_view::npos ? text : text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    line = strip(line);
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw ParseError("family text is empty");
  std::string_view header = lines.front();
  if (!header.starts_with("n="))
    throw ParseError("family header must be n=<int>");
  int n = parse_int(header.substr(2), "family header");
  if (n < 0 || n > kMaxGroundSize) throw ParseError("ground size out of range");

  std::vector<SubsetMask> members;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    SubsetMask m(n);
    if (line != "-") {
      int prev = 0;
      std::string_view rest = line;
      while (!rest.empty()) {
        std::size_t comma = rest.find(',');
        std::string_view token =
            strip(comma == std::string_view::npos ? rest : rest.substr(0, comma));
        rest.remove_prefix(comma == std::string_view::npos ? rest.size() : comma + 1);
        int e = parse_int(token, "family member");
        if (e < 1 || e > n) throw ParseError("element out of range 1..n");
        if (e <= prev) throw ParseError("elements must be ascending without duplicates");
        prev = e;
        m = m.with(e);
      }
    }
    members.push_back(m);
  }
  std::vector<SubsetMask> sorted = members;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ParseError("duplicate member in family text");
  return SetFamily::from_sorted_unique(n, std::move(sorted));
}

}  // namespace overlapx
