#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "dissem/kernels.hpp"

namespace dissem::kernels {

namespace avx2 {
bool compiled();
}

namespace {

bool detect_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  if (!avx2::compiled()) return false;
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

Backend initial_backend() {
  if (const char* env = std::getenv("DISSEM_KERNEL"); env && std::string(env) == "scalar") {
    return Backend::scalar;
  }
  return detect_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> backend{initial_backend()};
  return backend;
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
  }
  return "unknown";
}

bool avx2_available() {
  static const bool available = detect_avx2();
  return available;
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void force_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_available()) {
    throw std::runtime_error("AVX2 backend requested but not supported on this host");
  }
  current().store(b, std::memory_order_relaxed);
}

void axpy_mod(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src,
              std::uint8_t factor, std::uint32_t q) {
  if (active_backend() == Backend::avx2) {
    avx2::axpy_mod(dst, src, factor, q);
  } else {
    scalar::axpy_mod(dst, src, factor, q);
  }
}

void scale_mod(std::span<std::uint8_t> dst, std::uint8_t factor, std::uint32_t q) {
  if (active_backend() == Backend::avx2) {
    avx2::scale_mod(dst, factor, q);
  } else {
    scalar::scale_mod(dst, factor, q);
  }
}

}  // namespace dissem::kernels
