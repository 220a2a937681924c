#pragma once

#include <cstdint>
#include <random>

namespace dissem {

// std::uniform_int_distribution is implementation-defined; these helpers keep
// seeded output identical across standard libraries.
using Rng = std::mt19937_64;

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = Rng::max() - (Rng::max() % bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

inline bool coin(Rng& rng, double p) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

template <typename Container>
void shuffle_in_place(Container& c, Rng& rng) {
  for (std::size_t i = c.size(); i > 1; --i) {
    std::swap(c[i - 1], c[uniform_below(rng, i)]);
  }
}

}  // namespace dissem
