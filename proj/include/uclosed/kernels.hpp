#pragma once

// Data-parallel inner loops over arrays of SetMask. Each kernel has a scalar
// reference implementation and, on x86-64, an AVX2 variant; `active()` picks
// one at first use based on the running CPU.

#include "uclosed/set_mask.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace uclosed::kernels {

/// Index of the first j with a ⊆ images[j] and sets[j] ⊆ image, i.e. the
/// first interval [sets[j], images[j]] meeting [a, image]; `count` if none.
using FirstClashFn = std::size_t (*)(SetMask a, SetMask image, const SetMask* sets, const SetMask* images,
                                     std::size_t count);

/// counts[b] += number of masks with bit b set, for b < width (width ≤ 32).
using ElementCountsFn = void (*)(const SetMask* masks, std::size_t count, std::uint32_t* counts, int width);

/// Σ popcount(masks[i]).
using TotalCardinalityFn = std::uint64_t (*)(const SetMask* masks, std::size_t count);

struct KernelTable {
  std::string_view name;
  FirstClashFn first_clash;
  ElementCountsFn element_counts;
  TotalCardinalityFn total_cardinality;
};

const KernelTable& scalar();

/// nullptr when the binary or the CPU lacks AVX2.
const KernelTable* avx2();

/// The fastest table the CPU supports.
const KernelTable& active();

namespace detail {
std::size_t first_clash_scalar(SetMask, SetMask, const SetMask*, const SetMask*, std::size_t);
void element_counts_scalar(const SetMask*, std::size_t, std::uint32_t*, int);
std::uint64_t total_cardinality_scalar(const SetMask*, std::size_t);

bool avx2_compiled();
std::size_t first_clash_avx2(SetMask, SetMask, const SetMask*, const SetMask*, std::size_t);
void element_counts_avx2(const SetMask*, std::size_t, std::uint32_t*, int);
std::uint64_t total_cardinality_avx2(const SetMask*, std::size_t);
} // namespace detail

inline std::size_t first_clash(SetMask a, SetMask image, std::span<const SetMask> sets,
                               std::span<const SetMask> images) {
  return active().first_clash(a, image, sets.data(), images.data(), sets.size());
}

} // namespace uclosed::kernels
