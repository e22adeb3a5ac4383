#include "overlapx/overlap.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "overlapx/detail/bits.hpp"

namespace overlapx {

OverlapSpec::OverlapSpec(int ell, std::vector<int> pair_bounds)
    : ell_(ell), bounds_(std::move(pair_bounds)) {
  if (ell_ < 2) throw PreconditionError("overlap spec requires l >= 2");
  if (bounds_.size() != static_cast<std::size_t>(pair_count()))
    throw PreconditionError("overlap spec needs exactly C(l,2) bounds");
  for (int b : bounds_)
    if (b < 0) throw PreconditionError("overlap bounds must be non-negative");
}

OverlapSpec OverlapSpec::uniform(int ell, int m) {
  if (ell < 2) throw PreconditionError("overlap spec requires l >= 2");
  return OverlapSpec(ell, std::vector<int>(static_cast<std::size_t>(ell * (ell - 1) / 2), m));
}

int OverlapSpec::sigma() const {
  int s = 0;
  for (int b : bounds_) s += b;
  return s;
}

bool OverlapSpec::is_uniform() const {
  return std::all_of(bounds_.begin(), bounds_.end(),
                     [&](int b) { return b == bounds_.front(); });
}

int OverlapSpec::uniform_bound() const {
  if (!is_uniform()) throw PreconditionError("spec is not uniform");
  return bounds_.front();
}

std::size_t OverlapSpec::pair_index(int ell, int k, int kp) {
  if (k == kp || k < 1 || kp < 1 || k > ell || kp > ell)
    throw PreconditionError("bad family pair");
  if (k > kp) std::swap(k, kp);
  // pairs (1,2)..(1,l) come first, then (2,3)..(2,l), ...
  std::size_t before = static_cast<std::size_t>((k - 1)) * ell -
                       static_cast<std::size_t>(k * (k - 1) / 2);
  return before + static_cast<std::size_t>(kp - k - 1);
}

namespace {

void require_tuple(std::span<const SetFamily> families, const OverlapSpec& spec) {
  if (families.size() != static_cast<std::size_t>(spec.ell()))
    throw PreconditionError("family count does not match the spec arity");
  for (std::size_t i = 1; i < families.size(); ++i)
    if (families[i].ground_size() != families[0].ground_size())
      throw PreconditionError("ground-size mismatch between families");
}

// True when `candidate` may be added to family k without breaking the
// property against the other families' current members.
bool addition_ok(std::span<const SetFamily> families, const OverlapSpec& spec,
                 int k, const SubsetMask& candidate) {
  for (int kp = 1; kp <= spec.ell(); ++kp) {
    if (kp == k) continue;
    int m = spec.bound(k, kp);
    for (const SubsetMask& other : families[static_cast<std::size_t>(kp - 1)].members())
      if (candidate.intersection_size(other) > m) return false;
  }
  return true;
}

}  // namespace

std::optional<OverlapViolation> verify_overlap(std::span<const SetFamily> families,
                                               const OverlapSpec& spec) {
  require_tuple(families, spec);
  for (int k = 1; k <= spec.ell(); ++k)
    for (int kp = k + 1; kp <= spec.ell(); ++kp) {
      int m = spec.bound(k, kp);
      for (const SubsetMask& a : families[static_cast<std::size_t>(k - 1)].members())
        for (const SubsetMask& b : families[static_cast<std::size_t>(kp - 1)].members())
          if (a.intersection_size(b) > m)
            return OverlapViolation{k, kp, a, b};
    }
  return std::nullopt;
}

std::vector<OverlapViolation> all_overlap_violations(std::span<const SetFamily> families,
                                                     const OverlapSpec& spec) {
  require_tuple(families, spec);
  std::vector<OverlapViolation> out;
  for (int k = 1; k <= spec.ell(); ++k)
    for (int kp = k + 1; kp <= spec.ell(); ++kp) {
      int m = spec.bound(k, kp);
      for (const SubsetMask& a : families[static_cast<std::size_t>(k - 1)].members())
        for (const SubsetMask& b : families[static_cast<std::size_t>(kp - 1)].members())
          if (a.intersection_size(b) > m)
            out.push_back(OverlapViolation{k, kp, a, b});
    }
  return out;
}

std::vector<SetFamily> maximal_completion(std::vector<SetFamily> families,
                                          const OverlapSpec& spec,
                                          int enumeration_cap) {
  if (auto v = verify_overlap(families, spec))
    throw PreconditionError("input tuple violates the overlapping property");
  const int n = families.front().ground_size();
  if (n > enumeration_cap)
    throw CapacityError("completion scans all subsets; ground size exceeds the cap");

  const std::size_t ell = families.size();
  std::vector<std::vector<SubsetMask>> grown(ell);
  std::vector<detail::LatticeBitset> present(ell, detail::LatticeBitset(n));
  for (std::size_t i = 0; i < ell; ++i) {
    grown[i] = families[i].members();
    for (const SubsetMask& m : grown[i]) present[i].insert(m.lo());
  }

  auto fits = [&](std::size_t k0, const SubsetMask& candidate) {
    for (std::size_t kp0 = 0; kp0 < ell; ++kp0) {
      if (kp0 == k0) continue;
      int m = spec.bound(static_cast<int>(k0) + 1, static_cast<int>(kp0) + 1);
      for (const SubsetMask& other : grown[kp0])
        if (candidate.intersection_size(other) > m) return false;
    }
    return true;
  };

  // Additions only tighten the constraint, so one pass over (subset,
  // family) in the fixed order reaches a fixed point.
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t v = 0; v < total; ++v) {
    SubsetMask candidate = SubsetMask::from_words(n, v, 0);
    for (std::size_t k0 = 0; k0 < ell; ++k0) {
      if (present[k0].contains(v)) continue;
      if (fits(k0, candidate)) {
        grown[k0].push_back(candidate);
        present[k0].insert(v);
      }
    }
  }

  std::vector<SetFamily> out;
  out.reserve(ell);
  for (std::size_t i = 0; i < ell; ++i)
    out.push_back(SetFamily::from_sorted_unique(n, present[i].collect(n)));
  return out;
}

bool is_maximal(std::span<const SetFamily> families, const OverlapSpec& spec,
                int enumeration_cap) {
  require_tuple(families, spec);
  const int n = families.front().ground_size();
  if (n > enumeration_cap)
    throw CapacityError("maximality scan exceeds the ground-size cap");
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t v = 0; v < total; ++v) {
    SubsetMask candidate = SubsetMask::from_words(n, v, 0);
    for (int k = 1; k <= spec.ell(); ++k) {
      if (families[static_cast<std::size_t>(k - 1)].contains(candidate)) continue;
      if (addition_ok(families, spec, k, candidate)) return false;
    }
  }
  return true;
}

std::string format_overlap_spec(const OverlapSpec& spec) {
  std::ostringstream out;
  out << "l=" << spec.ell() << "; m=";
  for (std::size_t i = 0; i < spec.bounds().size(); ++i) {
    if (i) out << ",";
    out << spec.bounds()[i];
  }
  return out.str();
}

namespace {

int parse_int_token(std::string_view token, std::string_view what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError("bad integer in " + std::string(what));
  return value;
}

std::string_view strip_spaces(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

OverlapSpec parse_overlap_spec(std::string_view text) {
  std::size_t semi = text.find(';');
  if (semi == std::string_view::npos)
    throw ParseError("overlap spec must look like 'l=<int>; m=<list>'");
  std::string_view lpart = strip_spaces(text.substr(0, semi));
  std::string_view mpart = strip_spaces(text.substr(semi + 1));
  if (!lpart.starts_with("l=")) throw ParseError("overlap spec must start with l=");
  if (!mpart.starts_with("m=")) throw ParseError("overlap spec needs an m= part");
  int ell = parse_int_token(lpart.substr(2), "overlap spec l");
  std::string_view values = mpart.substr(2);
  std::vector<int> bounds;
  while (!values.empty()) {
    std::size_t comma = values.find(',');
    std::string_view token =
        strip_spaces(comma == std::string_view::npos ? values : values.substr(0, comma));
    values.remove_prefix(comma == std::string_view::npos ? values.size() : comma + 1);
    bounds.push_back(parse_int_token(token, "overlap spec m"));
  }
  if (bounds.empty()) throw ParseError("overlap spec needs at least one bound");
  if (bounds.size() == 1 && ell * (ell - 1) / 2 != 1)
    return OverlapSpec::uniform(ell, bounds.front());
  return OverlapSpec(ell, std::move(bounds));
}

}  // namespace overlapx
