#pragma once

#include "oracles.hpp"

#include "uclosed/family.hpp"
#include "uclosed/set_mask.hpp"

#include <vector>

namespace testing {

using uclosed::Family;
using uclosed::SetMask;

inline Family to_family(const oracle::Masks& masks, int n) {
  std::vector<SetMask> members;
  for (auto m : masks) members.push_back(SetMask(m));
  return Family(n, std::move(members));
}

inline oracle::Masks to_masks(const Family& fam) {
  oracle::Masks out;
  for (SetMask m : fam) out.push_back(m.bits());
  return out;
}

/// The 11 sets on [8], as listed: A0, A1..A8, B12, B34.
inline std::vector<SetMask> listed_sets() {
  return {SetMask::of({1, 2, 3, 4, 5, 6, 7, 8}), SetMask::of({2, 4, 6, 7, 8}), SetMask::of({1, 3, 5, 8}),
          SetMask::of({1, 4, 7, 8}),             SetMask::of({2, 3, 5, 6}),    SetMask::of({1, 3, 7}),
          SetMask::of({2, 3, 5}),                SetMask::of({2, 4, 6}),       SetMask::of({4, 5, 6, 7}),
          SetMask::of({8}),                      SetMask::of({1})};
}

inline Family listed_family() { return Family(8, listed_sets()); }

} // namespace testing
