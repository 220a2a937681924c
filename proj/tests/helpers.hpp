#pragma once
// Random test inputs.

#include <stdexcept>
#include <vector>

#include "dissem/instance.hpp"
#include "dissem/rng.hpp"
#include "oracles.hpp"

namespace testgen {

using dissem::Rng;

inline dissem::SideInfoGraph random_graph(std::size_t n, Rng& rng, double p = 0.4, bool symmetric = false) {
  std::vector<std::uint64_t> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = symmetric ? i + 1 : 0; j < n; ++j) {
      if (i == j || !dissem::coin(rng, p)) continue;
      out[i] |= std::uint64_t{1} << j;
      if (symmetric) out[j] |= std::uint64_t{1} << i;
    }
  }
  return {n, std::move(out)};
}

inline dissem::DirectedNetwork random_digraph(std::size_t k, Rng& rng, double p) {
  std::vector<dissem::Edge> edges;
  for (std::size_t u = 0; u < k; ++u) {
    for (std::size_t v = 0; v < k; ++v) {
      if (u != v && dissem::coin(rng, p)) edges.emplace_back(u, v);
    }
  }
  return {k, std::move(edges)};
}

/// Rejection-sampled strongly connected digraph, checked with the BFS oracle.
inline dissem::DirectedNetwork random_strong_digraph(std::size_t k, Rng& rng) {
  while (true) {
    const double p = 0.15 + 0.7 * static_cast<double>(dissem::uniform_below(rng, 1000)) / 1000.0;
    auto net = random_digraph(k, rng, p);
    if (oracle::max_eccentricity(k, net.edges())) return net;
  }
}

inline dissem::SymbolSet random_subset(std::size_t n, Rng& rng, double p = 0.5) {
  dissem::SymbolSet s;
  for (std::size_t j = 0; j < n; ++j) {
    if (dissem::coin(rng, p)) s.insert(j);
  }
  return s;
}

/// One transmitter holding everything, one receiver per symbol with random
/// side information.
inline dissem::DisseminationInstance random_star_instance(std::size_t n, Rng& rng) {
  std::vector<dissem::Edge> edges;
  std::vector<dissem::SymbolSet> possess(n + 1);
  std::vector<dissem::SymbolSet> request(n + 1);
  possess[0] = dissem::SymbolSet::full(n);
  for (std::size_t s = 0; s < n; ++s) {
    edges.emplace_back(0, s + 1);
    auto side = random_subset(n, rng, 0.45);
    side.erase(s);
    possess[s + 1] = side;
    request[s + 1].insert(s);
  }
  return {2, n, dissem::DirectedNetwork(n + 1, std::move(edges)), std::move(possess), std::move(request)};
}

/// Random instance whose requests are all reachable in one hop.
inline dissem::DisseminationInstance random_one_round_instance(std::size_t k, std::size_t n, Rng& rng,
                                                               std::uint32_t q = 2) {
  if (k < 2) throw std::invalid_argument("one node cannot request anything");
  while (true) {
    auto net = random_digraph(k, rng, 0.5);
    std::vector<dissem::SymbolSet> possess(k);
    std::vector<dissem::SymbolSet> request(k);
    for (std::size_t l = 0; l < k; ++l) possess[l] = random_subset(n, rng, 0.45);
    bool any = false;
    for (std::size_t l = 0; l < k; ++l) {
      dissem::SymbolSet heard;
      for (auto i : net.in_neighbors(l)) heard = heard | possess[i];
      for (auto j : (heard - possess[l]).items()) {
        if (dissem::coin(rng, 0.6)) {
          request[l].insert(j);
          any = true;
        }
      }
    }
    if (any) return {q, n, std::move(net), std::move(possess), std::move(request)};
  }
}

/// Strongly connected network, every symbol held somewhere, requests = complement.
inline dissem::DisseminationInstance random_full_instance(std::size_t k, std::size_t n, Rng& rng) {
  auto net = random_strong_digraph(k, rng);
  std::vector<dissem::SymbolSet> possess(k);
  for (std::size_t s = 0; s < n; ++s) {
    const auto holders = 1 + dissem::uniform_below(rng, (std::uint64_t{1} << k) - 1);
    for (std::size_t l = 0; l < k; ++l) {
      if ((holders >> l) & 1u) possess[l].insert(s);
    }
  }
  std::vector<dissem::SymbolSet> request(k);
  for (std::size_t l = 0; l < k; ++l) request[l] = dissem::SymbolSet::full(n) - possess[l];
  return {2, n, std::move(net), std::move(possess), std::move(request)};
}

inline dissem::StarMatrix random_pattern(std::size_t rows, std::size_t cols, std::size_t max_stars, Rng& rng) {
  while (true) {
    std::vector<dissem::StarEntry> e;
    std::size_t stars = 0;
    for (std::size_t i = 0; i < rows * cols; ++i) {
      if (dissem::coin(rng, 0.4)) {
        e.push_back(dissem::StarEntry::star());
        ++stars;
      } else {
        e.push_back(dissem::StarEntry::fixed(dissem::FieldElement(0, 2)));
      }
    }
    if (stars <= max_stars) return {2, rows, cols, std::move(e)};
  }
}

/// GF(2) rows of a FieldMatrix as bitmasks.
inline oracle::Masks masks_of(const dissem::FieldMatrix& m) {
  oracle::Masks out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::uint64_t x = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m.at(r, c) & 1u) x |= std::uint64_t{1} << c;
    }
    out.push_back(x);
  }
  return out;
}

/// sum(coeffs[i] * rows[i]) mod q, computed without the library.
inline std::vector<long> recombine(const std::vector<std::uint8_t>& coeffs, const dissem::FieldMatrix& m) {
  std::vector<long> out(m.cols(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out[c] = (out[c] + static_cast<long>(coeffs[r]) * m.at(r, c)) % static_cast<long>(m.modulus());
    }
  }
  return out;
}

inline std::vector<long> unit(std::size_t n, std::size_t i) {
  std::vector<long> e(n, 0);
  e[i] = 1;
  return e;
}

}  // namespace testgen
