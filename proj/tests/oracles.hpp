#pragma once
// Brute-force reference computations for the tests. None of these call the
// library's elimination, matching or search code.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <vector>

#include "dissem/instance.hpp"
#include "dissem/star_algebra.hpp"

namespace oracle {

using Masks = std::vector<std::uint64_t>;

/// Rank of GF(2) row bitmasks by plain elimination.
inline std::size_t gf2_rank(Masks rows) {
  std::size_t r = 0;
  for (std::size_t bit = 0; bit < 64; ++bit) {
    const std::uint64_t b = std::uint64_t{1} << bit;
    auto it = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(r), rows.end(),
                           [&](std::uint64_t x) { return x & b; });
    if (it == rows.end()) continue;
    std::swap(*it, rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && (rows[i] & b)) rows[i] ^= rows[r];
    }
    ++r;
  }
  return r;
}

/// Rank over GF(q) by textbook elimination on int rows.
inline std::size_t gfq_rank(std::vector<std::vector<long>> m, long q) {
  auto inv = [q](long a) {
    for (long x = 1; x < q; ++x) {
      if (a * x % q == 1) return x;
    }
    return 0L;
  };
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] % q == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const long f = inv(m[r][c] % q);
    for (auto& x : m[r]) x = x * f % q;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] % q == 0) continue;
      const long g = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = ((m[i][j] - g * m[r][j]) % q + q) % q;
    }
    ++r;
  }
  return r;
}

/// Min GF(2) rank over every matrix that fits H (all 2^#edges of them).
inline std::size_t minrank2(const dissem::SideInfoGraph& h) {
  const std::size_t n = h.vertex_count();
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (h.has_edge(i, j)) edges.emplace_back(i, j);
    }
  }
  std::size_t best = n;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << edges.size()); ++pick) {
    Masks rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = std::uint64_t{1} << i;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if ((pick >> e) & 1u) rows[edges[e].first] |= std::uint64_t{1} << edges[e].second;
    }
    best = std::min(best, gf2_rank(rows));
  }
  return best;
}

inline bool independent(const dissem::SideInfoGraph& h, std::uint64_t set) {
  for (std::size_t i = 0; i < h.vertex_count(); ++i) {
    for (std::size_t j = 0; j < h.vertex_count(); ++j) {
      if (((set >> i) & 1u) && ((set >> j) & 1u) && h.has_edge(i, j)) return false;
    }
  }
  return true;
}

inline std::size_t alpha(const dissem::SideInfoGraph& h) {
  std::size_t best = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << h.vertex_count()); ++s) {
    if (independent(h, s)) best = std::max<std::size_t>(best, static_cast<std::size_t>(std::popcount(s)));
  }
  return best;
}

/// Cliques need edges both ways; min cover by subset dynamic programming.
inline std::size_t clique_cover(const dissem::SideInfoGraph& h) {
  const std::size_t n = h.vertex_count();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<bool> clique(full + 1, true);
  for (std::uint64_t s = 0; s <= full; ++s) {
    for (std::size_t i = 0; i < n && clique[s]; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && ((s >> i) & 1u) && ((s >> j) & 1u) && !(h.has_edge(i, j) && h.has_edge(j, i))) {
          clique[s] = false;
          break;
        }
      }
    }
  }
  std::vector<std::size_t> dp(full + 1, n + 1);
  dp[0] = 0;
  for (std::uint64_t s = 1; s <= full; ++s) {
    const std::uint64_t low = s & -s;
    for (std::uint64_t sub = s; sub; sub = (sub - 1) & s) {
      if ((sub & low) && clique[sub]) dp[s] = std::min(dp[s], dp[s & ~sub] + 1);
    }
  }
  return dp[full];
}

/// Max over nodes of the longest BFS distance to any other node; nullopt
/// when some node cannot reach another.
inline std::optional<std::size_t> max_eccentricity(std::size_t k, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<std::size_t>> out(k);
  for (const auto& [u, v] : edges) out[u].push_back(v);
  std::size_t worst = 0;
  for (std::size_t s = 0; s < k; ++s) {
    std::vector<long> dist(k, -1);
    std::deque<std::size_t> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      for (auto v : out[u]) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    }
    for (auto d : dist) {
      if (d < 0) return std::nullopt;
      worst = std::max(worst, static_cast<std::size_t>(d));
    }
  }
  return worst;
}

/// Max rank over all 0/1 substitutions of the * entries (GF(2)).
inline std::size_t maxrank_exhaustive(const dissem::StarMatrix& a) {
  std::vector<std::pair<std::size_t, std::size_t>> stars;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (a.is_star(r, c)) stars.emplace_back(r, c);
    }
  }
  std::size_t best = 0;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << stars.size()); ++pick) {
    Masks rows(a.rows(), 0);
    for (std::size_t s = 0; s < stars.size(); ++s) {
      if ((pick >> s) & 1u) rows[stars[s].first] |= std::uint64_t{1} << stars[s].second;
    }
    best = std::max(best, gf2_rank(rows));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Subspaces of GF(2)^n for n <= 4 as explicit element sets: bit v of a
// 16-bit word says whether vector v (an n-bit mask) belongs to the subspace.

using ElementSet = std::uint32_t;

inline ElementSet closure_add(ElementSet s, std::uint32_t v) {
  if ((s >> v) & 1u) return s;
  ElementSet out = s;
  for (std::uint32_t x = 0; x < 16; ++x) {
    if ((s >> x) & 1u) out |= ElementSet{1} << (x ^ v);
  }
  return out;
}

inline ElementSet closure_union(ElementSet a, ElementSet b) {
  for (std::uint32_t x = 0; x < 16; ++x) {
    if ((b >> x) & 1u) a = closure_add(a, x);
  }
  return a;
}

inline std::size_t set_dimension(ElementSet s) {
  return static_cast<std::size_t>(std::countr_zero(static_cast<std::uint32_t>(std::popcount(s))));
}

/// Every subspace of the coordinate space on `coords`, found by closing every
/// subset of its nonzero vectors and removing duplicates.
inline std::vector<ElementSet> all_subspaces(std::uint32_t coords) {
  std::vector<std::uint32_t> vecs;
  for (std::uint32_t v = 1; v < 16; ++v) {
    if ((v & ~coords) == 0) vecs.push_back(v);
  }
  std::vector<ElementSet> out;
  for (std::uint32_t pick = 0; pick < (1u << vecs.size()); ++pick) {
    ElementSet s = 1;  // {0}
    for (std::size_t i = 0; i < vecs.size(); ++i) {
      if ((pick >> i) & 1u) s = closure_add(s, vecs[i]);
    }
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::uint32_t coord_span_mask(dissem::SymbolSet s) { return static_cast<std::uint32_t>(s.bits()); }

inline ElementSet coordinate_space(dissem::SymbolSet s) {
  ElementSet out = 1;
  for (auto j : s.items()) out = closure_add(out, 1u << j);
  return out;
}

/// Minimum one-round transmissions over GF(2), n <= 4, by trying every
/// combination of per-node subspaces with total dimension below `limit`.
/// Returns the minimum found below the limit, or nullopt when none exists.
inline std::optional<std::size_t> one_round_min_below(const dissem::DisseminationInstance& inst, std::size_t limit) {
  const std::size_t k = inst.node_count();
  std::vector<std::vector<ElementSet>> options(k);
  for (std::size_t l = 0; l < k; ++l) options[l] = all_subspaces(coord_span_mask(inst.possess(l)));
  std::vector<ElementSet> chosen(k, 1);
  std::optional<std::size_t> best;
  auto satisfied = [&]() {
    for (std::size_t j = 0; j < k; ++j) {
      if (inst.request(j).empty()) continue;
      ElementSet heard = coordinate_space(inst.possess(j));
      for (auto i : inst.net().in_neighbors(j)) heard = closure_union(heard, chosen[i]);
      for (auto eta : inst.request(j).items()) {
        if (!((heard >> (1u << eta)) & 1u)) return false;
      }
    }
    return true;
  };
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t l, std::size_t used) {
    const std::size_t cap = best ? *best : limit;
    if (used >= cap) return;
    if (l == k) {
      if (satisfied()) best = used;
      return;
    }
    for (auto s : options[l]) {
      chosen[l] = s;
      rec(l + 1, used + set_dimension(s));
    }
    chosen[l] = 1;
  };
  rec(0, 0);
  return best;
}

/// Whether per-node spans given as row bitmasks satisfy every request,
/// checked by explicit element sets.
inline bool one_round_valid(const dissem::DisseminationInstance& inst, const std::vector<Masks>& rows) {
  for (std::size_t j = 0; j < inst.node_count(); ++j) {
    ElementSet heard = coordinate_space(inst.possess(j));
    for (auto i : inst.net().in_neighbors(j)) {
      for (auto r : rows[i]) heard = closure_add(heard, static_cast<std::uint32_t>(r));
    }
    for (auto eta : inst.request(j).items()) {
      if (!((heard >> (1u << eta)) & 1u)) return false;
    }
  }
  return true;
}

/// Fewest total transmissions over `rounds` rounds when every node may send
/// any vectors it knows (GF(2), n <= 3, k <= 3), by iterative deepening over
/// all per-round subspace choices.
inline std::size_t multiround_optimum(const dissem::DisseminationInstance& inst, std::size_t rounds) {
  const std::size_t k = inst.node_count();
  std::vector<ElementSet> start(k);
  for (std::size_t l = 0; l < k; ++l) start[l] = coordinate_space(inst.possess(l));
  auto done = [&](const std::vector<ElementSet>& know) {
    for (std::size_t j = 0; j < k; ++j) {
      for (auto eta : inst.request(j).items()) {
        if (!((know[j] >> (1u << eta)) & 1u)) return false;
      }
    }
    return true;
  };
  // subspaces contained in a given knowledge set
  auto subspaces_of = [](ElementSet know) {
    std::vector<ElementSet> out;
    for (auto s : all_subspaces(0xF)) {
      if ((s & ~know) == 0) out.push_back(s);
    }
    return out;
  };
  std::function<bool(std::size_t, std::vector<ElementSet>, std::size_t)> reach =
      [&](std::size_t round, std::vector<ElementSet> know, std::size_t budget) -> bool {
    if (done(know)) return true;
    if (round == rounds) return false;
    std::vector<std::vector<ElementSet>> opts(k);
    for (std::size_t l = 0; l < k; ++l) opts[l] = subspaces_of(know[l]);
    std::vector<ElementSet> pick(k, 1);
    std::function<bool(std::size_t, std::size_t)> choose = [&](std::size_t l, std::size_t left) -> bool {
      if (l == k) {
        auto next = know;
        for (std::size_t j = 0; j < k; ++j) {
          for (auto i : inst.net().in_neighbors(j)) next[j] = closure_union(next[j], pick[i]);
        }
        return reach(round + 1, next, left);
      }
      for (auto s : opts[l]) {
        const auto d = set_dimension(s);
        if (d > left) continue;
        pick[l] = s;
        if (choose(l + 1, left - d)) return true;
      }
      pick[l] = 1;
      return false;
    };
    return choose(0, budget);
  };
  for (std::size_t budget = 0;; ++budget) {
    if (reach(0, start, budget)) return budget;
  }
}

}  // namespace oracle
