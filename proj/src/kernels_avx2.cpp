#include "uclosed/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define UCLOSED_HAVE_AVX2 1
#else
#define UCLOSED_HAVE_AVX2 0
#endif

// Only the functions below are compiled for AVX2 (via the target attribute);
// the rest of this translation unit stays at the baseline ISA so that no
// AVX2-encoded inline function from a header can leak into the link.

namespace uclosed::kernels::detail {

#if UCLOSED_HAVE_AVX2

bool avx2_compiled() { return true; }

__attribute__((target("avx2"))) std::size_t first_clash_avx2(SetMask a, SetMask image, const SetMask* sets,
                                                              const SetMask* images, std::size_t count) {
  const __m256i va = _mm256_set1_epi32(static_cast<int>(a.bits()));
  const __m256i vimage = _mm256_set1_epi32(static_cast<int>(image.bits()));
  const __m256i zero = _mm256_setzero_si256();
  std::size_t j = 0;
  for (; j + 8 <= count; j += 8) {
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(sets + j));
    const __m256i f = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(images + j));
    // a \ f == 0  and  s \ image == 0
    const __m256i a_in_f = _mm256_cmpeq_epi32(_mm256_andnot_si256(f, va), zero);
    const __m256i s_in_image = _mm256_cmpeq_epi32(_mm256_andnot_si256(vimage, s), zero);
    const int hits = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_and_si256(a_in_f, s_in_image)));
    if (hits != 0) return j + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(hits)));
  }
  for (; j < count; ++j) {
    const std::uint32_t f = images[j].bits(), s = sets[j].bits();
    if ((a.bits() & ~f) == 0 && (s & ~image.bits()) == 0) return j;
  }
  return count;
}

__attribute__((target("avx2"))) void element_counts_avx2(const SetMask* masks, std::size_t count,
                                                          std::uint32_t* counts, int width) {
  __m256i acc[32];
  __m256i probe[32];
  for (int b = 0; b < width; ++b) {
    acc[b] = _mm256_setzero_si256();
    probe[b] = _mm256_set1_epi32(static_cast<int>(1u << b));
  }
  std::size_t i = 0;
  for (; i + 8 <= count; i += 8) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(masks + i));
    for (int b = 0; b < width; ++b) {
      // lanes with bit b set compare equal to the probe and become -1
      const __m256i hit = _mm256_cmpeq_epi32(_mm256_and_si256(v, probe[b]), probe[b]);
      acc[b] = _mm256_sub_epi32(acc[b], hit);
    }
  }
  alignas(32) std::uint32_t lanes[8];
  for (int b = 0; b < width; ++b) {
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc[b]);
    std::uint32_t sum = 0;
    for (std::uint32_t l : lanes) sum += l;
    counts[b] += sum;
  }
  for (; i < count; ++i)
    for (int b = 0; b < width; ++b) counts[b] += (masks[i].bits() >> b) & 1u;
}

__attribute__((target("avx2"))) std::uint64_t total_cardinality_avx2(const SetMask* masks, std::size_t count) {
  const __m256i nibble_popcount =
      _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4, 0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_nibble = _mm256_set1_epi8(0x0f);
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 8 <= count; i += 8) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(masks + i));
    const __m256i lo = _mm256_shuffle_epi8(nibble_popcount, _mm256_and_si256(v, low_nibble));
    const __m256i hi = _mm256_shuffle_epi8(nibble_popcount, _mm256_and_si256(_mm256_srli_epi16(v, 4), low_nibble));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(_mm256_add_epi8(lo, hi), _mm256_setzero_si256()));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < count; ++i) total += static_cast<std::uint64_t>(__builtin_popcount(masks[i].bits()));
  return total;
}

#else

bool avx2_compiled() { return false; }
std::size_t first_clash_avx2(SetMask, SetMask, const SetMask*, const SetMask*, std::size_t count) { return count; }
void element_counts_avx2(const SetMask*, std::size_t, std::uint32_t*, int) {}
std::uint64_t total_cardinality_avx2(const SetMask*, std::size_t) { return 0; }

#endif

} // namespace uclosed::kernels::detail
