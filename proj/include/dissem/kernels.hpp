#pragma once
// Row kernels over GF(q), q prime and below 256.
//
// Every kernel has a portable scalar reference implementation and, on x86-64
// hosts that report AVX2 at runtime, a vectorized variant. The dispatching
// entry points pick the variant once; tests compare the two bit for bit.

#include <cstdint>
#include <span>
#include <string_view>

namespace dissem::kernels {

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend b);

/// True when the AVX2 variant was compiled in and the CPU supports it.
bool avx2_available();

/// Backend used by the dispatching kernels below. Honors DISSEM_KERNEL=scalar.
Backend active_backend();

/// Overrides the dispatch choice; requesting avx2 on a host without it throws.
void force_backend(Backend b);

// dst[i] = (dst[i] + factor * src[i]) mod q
void axpy_mod(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src,
              std::uint8_t factor, std::uint32_t q);

// dst[i] = (factor * dst[i]) mod q
void scale_mod(std::span<std::uint8_t> dst, std::uint8_t factor, std::uint32_t q);

namespace scalar {
void axpy_mod(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src,
              std::uint8_t factor, std::uint32_t q);
void scale_mod(std::span<std::uint8_t> dst, std::uint8_t factor, std::uint32_t q);
}  // namespace scalar

namespace avx2 {
// Only callable when avx2_available().
void axpy_mod(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src,
              std::uint8_t factor, std::uint32_t q);
void scale_mod(std::span<std::uint8_t> dst, std::uint8_t factor, std::uint32_t q);
}  // namespace avx2

}  // namespace dissem::kernels
