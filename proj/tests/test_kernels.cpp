#include <doctest.h>

#include <vector>

#include "dissem/field.hpp"
#include "dissem/kernels.hpp"
#include "dissem/rng.hpp"

using namespace dissem;
namespace k = dissem::kernels;

namespace {

std::vector<std::uint32_t> primes_below_256() {
  std::vector<std::uint32_t> out;
  for (std::uint32_t q = 2; q < 256; ++q) {
    if (is_prime(q)) out.push_back(q);
  }
  return out;
}

struct BackendGuard {
  k::Backend saved = k::active_backend();
  ~BackendGuard() { k::force_backend(saved); }
};

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar axpy matches the definition for every prime, factor and entry") {
    for (auto q : primes_below_256()) {
      std::vector<std::uint8_t> src(q), dst(q);
      for (std::uint32_t f = 0; f < q; ++f) {
        for (std::uint32_t i = 0; i < q; ++i) {
          src[i] = static_cast<std::uint8_t>(i);
          dst[i] = static_cast<std::uint8_t>((i * 7 + 3) % q);
        }
        auto expect = dst;
        for (std::uint32_t i = 0; i < q; ++i) expect[i] = static_cast<std::uint8_t>((expect[i] + f * src[i]) % q);
        k::scalar::axpy_mod(dst, src, static_cast<std::uint8_t>(f), q);
        REQUIRE(dst == expect);
      }
    }
  }

  TEST_CASE("avx2 axpy and scale agree with scalar bit for bit") {
    if (!k::avx2_available()) {
      MESSAGE("AVX2 not available on this host; equivalence skipped");
      return;
    }
    Rng rng(11);
    for (auto q : primes_below_256()) {
      // every (factor, value) pair, at lengths that exercise the vector body and the tail
      for (std::size_t len : {std::size_t{1}, std::size_t{15}, std::size_t{31}, std::size_t{32},
                              std::size_t{33}, std::size_t{q}, std::size_t{q + 45}}) {
        for (std::uint32_t f = 0; f < q; ++f) {
          std::vector<std::uint8_t> src(len), d1(len);
          for (std::size_t i = 0; i < len; ++i) {
            src[i] = static_cast<std::uint8_t>(i % q);
            d1[i] = static_cast<std::uint8_t>(uniform_below(rng, q));
          }
          auto d2 = d1;
          k::scalar::axpy_mod(d1, src, static_cast<std::uint8_t>(f), q);
          k::avx2::axpy_mod(d2, src, static_cast<std::uint8_t>(f), q);
          REQUIRE(d1 == d2);
          k::scalar::scale_mod(d1, static_cast<std::uint8_t>(f), q);
          k::avx2::scale_mod(d2, static_cast<std::uint8_t>(f), q);
          REQUIRE(d1 == d2);
        }
      }
    }
  }

  TEST_CASE("max products: (q-1) + (q-1)^2 reduces correctly in both backends") {
    for (auto q : primes_below_256()) {
      std::vector<std::uint8_t> src(77, static_cast<std::uint8_t>(q - 1));
      std::vector<std::uint8_t> d1(77, static_cast<std::uint8_t>(q - 1));
      auto d2 = d1;
      const auto want = static_cast<std::uint8_t>(((q - 1) + (q - 1) * (q - 1)) % q);
      k::scalar::axpy_mod(d1, src, static_cast<std::uint8_t>(q - 1), q);
      CHECK(d1 == std::vector<std::uint8_t>(77, want));
      if (k::avx2_available()) {
        k::avx2::axpy_mod(d2, src, static_cast<std::uint8_t>(q - 1), q);
        CHECK(d2 == d1);
      }
    }
  }

  TEST_CASE("dispatch honors forced backend and row reduction agrees across backends") {
    BackendGuard guard;
    Rng rng(5);
    for (std::uint32_t q : {2u, 3u, 7u, 251u}) {
      for (int trial = 0; trial < 20; ++trial) {
        const std::size_t rows = 1 + uniform_below(rng, 12);
        const std::size_t cols = 1 + uniform_below(rng, 70);
        FieldVector data(rows * cols);
        for (auto& x : data) x = static_cast<std::uint8_t>(uniform_below(rng, q));
        FieldMatrix m(q, rows, cols, data);
        k::force_backend(k::Backend::scalar);
        CHECK(k::active_backend() == k::Backend::scalar);
        const auto a = rref(m);
        if (k::avx2_available()) {
          k::force_backend(k::Backend::avx2);
          const auto b = rref(m);
          CHECK(a.reduced == b.reduced);
          CHECK(a.pivots == b.pivots);
        }
      }
    }
  }

  TEST_CASE("backend names") {
    CHECK(k::backend_name(k::Backend::scalar) == "scalar");
    CHECK(k::backend_name(k::Backend::avx2) == "avx2");
  }
}
