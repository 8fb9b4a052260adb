#include "uclosed/kernels.hpp"

#include <bit>

namespace uclosed::kernels::detail {

std::size_t first_clash_scalar(SetMask a, SetMask image, const SetMask* sets, const SetMask* images,
                               std::size_t count) {
  for (std::size_t j = 0; j < count; ++j)
    if (a.subset_of(images[j]) && sets[j].subset_of(image)) return j;
  return count;
}

void element_counts_scalar(const SetMask* masks, std::size_t count, std::uint32_t* counts, int width) {
  for (std::size_t i = 0; i < count; ++i)
    for (std::uint32_t b = masks[i].bits(); b != 0; b &= b - 1) {
      const int e = std::countr_zero(b);
      if (e < width) ++counts[e];
    }
}

std::uint64_t total_cardinality_scalar(const SetMask* masks, std::size_t count) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < count; ++i) total += static_cast<std::uint64_t>(masks[i].size());
  return total;
}

} // namespace uclosed::kernels::detail
