#pragma once

#include <initializer_list>
#include <vector>

#include "overlapx/family.hpp"

namespace overlapx::testutil {

inline SubsetMask set_of(int n, std::initializer_list<int> elems) {
  return SubsetMask::of(n, elems);
}

inline SetFamily fam(int n, std::initializer_list<std::initializer_list<int>> sets) {
  std::vector<SubsetMask> members;
  for (const auto& s : sets) members.push_back(SubsetMask::of(n, s));
  return SetFamily(n, std::move(members));
}

}  // namespace overlapx::testutil
