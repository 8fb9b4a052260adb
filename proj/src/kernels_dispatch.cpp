#include "uclosed/kernels.hpp"

namespace uclosed::kernels {

namespace {

constexpr KernelTable kScalar{"scalar", detail::first_clash_scalar, detail::element_counts_scalar,
                              detail::total_cardinality_scalar};
constexpr KernelTable kAvx2{"avx2", detail::first_clash_avx2, detail::element_counts_avx2,
                            detail::total_cardinality_avx2};

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

} // namespace

const KernelTable& scalar() { return kScalar; }

const KernelTable* avx2() {
  static const bool usable = detail::avx2_compiled() && cpu_has_avx2();
  return usable ? &kAvx2 : nullptr;
}

const KernelTable& active() {
  static const KernelTable& chosen = avx2() != nullptr ? *avx2() : kScalar;
  return chosen;
}

} // namespace uclosed::kernels
