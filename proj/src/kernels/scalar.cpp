#include "dissem/kernels.hpp"

namespace dissem::kernels::scalar {

void axpy_mod(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src,
              std::uint8_t factor, std::uint32_t q) {
  if (factor == 0) return;
  const std::size_t n = dst.size();
  if (q == 2) {
    for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] = static_cast<std::uint8_t>(
        (dst[i] + static_cast<std::uint32_t>(factor) * src[i]) % q);
  }
}

void scale_mod(std::span<std::uint8_t> dst, std::uint8_t factor, std::uint32_t q) {
  if (factor == 1) return;
  for (auto& x : dst) {
    x = static_cast<std::uint8_t>((static_cast<std::uint32_t>(factor) * x) % q);
  }
}

}  // namespace dissem::kernels::scalar
