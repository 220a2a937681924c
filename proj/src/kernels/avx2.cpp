#include "dissem/kernels.hpp"

#include <stdexcept>

#if defined(__x86_64__) || defined(_M_X64)
#define DISSEM_HAVE_AVX2_TU 1
#include <immintrin.h>
#else
#define DISSEM_HAVE_AVX2_TU 0
#endif

namespace dissem::kernels::avx2 {

#if DISSEM_HAVE_AVX2_TU

namespace {

// Sixteen 16-bit lanes, each holding t < 2^16, reduced mod q (q < 256).
// Barrett with m = floor(2^16 / q): the quotient estimate is at most one
// short, so a single conditional subtraction finishes the reduction.
__attribute__((target("avx2"))) inline __m256i reduce16(__m256i t, __m256i vq, __m256i vm) {
  const __m256i qhat = _mm256_mulhi_epu16(t, vm);
  const __m256i r = _mm256_sub_epi16(t, _mm256_mullo_epi16(qhat, vq));
  return _mm256_min_epu16(r, _mm256_sub_epi16(r, vq));
}

__attribute__((target("avx2"))) inline __m256i pack16(__m256i lo, __m256i hi) {
  return _mm256_permute4x64_epi64(_mm256_packus_epi16(lo, hi), 0xD8);
}

}  // namespace

__attribute__((target("avx2"))) void axpy_mod(std::span<std::uint8_t> dst,
                                              std::span<const std::uint8_t> src,
                                              std::uint8_t factor, std::uint32_t q) {
  if (factor == 0) return;
  const std::size_t n = dst.size();
  std::size_t i = 0;
  std::uint8_t* d = dst.data();
  const std::uint8_t* s = src.data();
  if (q == 2) {
    for (; i + 32 <= n; i += 32) {
      const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(d + i));
      const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(s + i));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(d + i), _mm256_xor_si256(a, b));
    }
    for (; i < n; ++i) d[i] ^= s[i];
    return;
  }
  const __m256i vq = _mm256_set1_epi16(static_cast<short>(q));
  const __m256i vm = _mm256_set1_epi16(static_cast<short>(65536u / q));
  const __m256i vf = _mm256_set1_epi16(factor);
  for (; i + 32 <= n; i += 32) {
    const __m128i d0 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(d + i));
    const __m128i d1 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(d + i + 16));
    const __m128i s0 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(s + i));
    const __m128i s1 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(s + i + 16));
    __m256i lo = _mm256_add_epi16(_mm256_cvtepu8_epi16(d0),
                                  _mm256_mullo_epi16(_mm256_cvtepu8_epi16(s0), vf));
    __m256i hi = _mm256_add_epi16(_mm256_cvtepu8_epi16(d1),
                                  _mm256_mullo_epi16(_mm256_cvtepu8_epi16(s1), vf));
    lo = reduce16(lo, vq, vm);
    hi = reduce16(hi, vq, vm);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(d + i), pack16(lo, hi));
  }
  scalar::axpy_mod(dst.subspan(i), src.subspan(i), factor, q);
}

__attribute__((target("avx2"))) void scale_mod(std::span<std::uint8_t> dst, std::uint8_t factor,
                                               std::uint32_t q) {
  if (factor == 1) return;
  const std::size_t n = dst.size();
  std::size_t i = 0;
  std::uint8_t* d = dst.data();
  if (factor == 0) {
    for (; i + 32 <= n; i += 32) {
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(d + i), _mm256_setzero_si256());
    }
    for (; i < n; ++i) d[i] = 0;
    return;
  }
  const __m256i vq = _mm256_set1_epi16(static_cast<short>(q));
  const __m256i vm = _mm256_set1_epi16(static_cast<short>(65536u / q));
  const __m256i vf = _mm256_set1_epi16(factor);
  for (; i + 32 <= n; i += 32) {
    const __m128i d0 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(d + i));
    const __m128i d1 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(d + i + 16));
    const __m256i lo = reduce16(_mm256_mullo_epi16(_mm256_cvtepu8_epi16(d0), vf), vq, vm);
    const __m256i hi = reduce16(_mm256_mullo_epi16(_mm256_cvtepu8_epi16(d1), vf), vq, vm);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(d + i), pack16(lo, hi));
  }
  scalar::scale_mod(dst.subspan(i), factor, q);
}

bool compiled() { return true; }

#else

void axpy_mod(std::span<std::uint8_t>, std::span<const std::uint8_t>, std::uint8_t, std::uint32_t) {
  throw std::logic_error("AVX2 kernels are not available on this target");
}
void scale_mod(std::span<std::uint8_t>, std::uint8_t, std::uint32_t) {
  throw std::logic_error("AVX2 kernels are not available on this target");
}
bool compiled() { return false; }

#endif

}  // namespace dissem::kernels::avx2
