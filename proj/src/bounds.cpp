#include "dissem/bounds.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <set>
#include <unordered_map>

#include "dissem/errors.hpp"

namespace dissem {

namespace {

std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }

std::uint64_t all_bits(std::size_t n) { return n >= 64 ? ~std::uint64_t{0} : bit(n) - 1; }

void require_cap(std::size_t n, std::size_t cap, const char* what) {
  if (n > cap) {
    throw CapExceeded(std::string(what) + " limited to " + std::to_string(cap) + " vertices, graph has " +
                      std::to_string(n));
  }
}

// GF(2) span of bitmask vectors; each stored row has its pivot as lowest bit.
class XorBasis {
 public:
  std::uint64_t reduce(std::uint64_t v) const {
    while (v & pivots_) v ^= rows_[std::countr_zero(v & pivots_)];
    return v;
  }
  bool insert(std::uint64_t v) {
    v = reduce(v);
    if (v == 0) return false;
    rows_[std::countr_zero(v)] = v;
    pivots_ |= v & -v;
    ++dim_;
    return true;
  }
  std::size_t dimension() const { return dim_; }

  // Fully reduced rows ordered by pivot: a canonical name for the span.
  std::vector<std::uint64_t> key() const {
    std::vector<std::uint64_t> out;
    std::array<std::uint64_t, 64> full{};
    for (std::uint64_t p = pivots_; p;) {
      const int hi = 63 - std::countl_zero(p);
      p &= ~bit(static_cast<std::size_t>(hi));
      std::uint64_t r = rows_[hi];
      for (std::uint64_t others = r & pivots_ & ~bit(static_cast<std::size_t>(hi)); others;) {
        const int q = std::countr_zero(others);
        r ^= full[q];
        others = r & pivots_ & ~bit(static_cast<std::size_t>(hi));
      }
      full[hi] = r;
    }
    for (std::uint64_t p = pivots_; p; p &= p - 1) out.push_back(full[std::countr_zero(p)]);
    return out;
  }

 private:
  std::array<std::uint64_t, 64> rows_{};
  std::uint64_t pivots_ = 0;
  std::size_t dim_ = 0;
};

class MinrankSearch {
 public:
  MinrankSearch(const SideInfoGraph& h, std::size_t target) : h_(h), target_(target) {}

  bool run() { return fits_from(0, XorBasis{}); }

 private:
  // Rows i.. can each pick a fitting vector inside a span of dimension <= target.
  bool fits_from(std::size_t i, const XorBasis& span) {
    const std::size_t n = h_.vertex_count();
    if (i == n) return true;
    const std::uint64_t free = h_.out_mask(i);
    XorBasis widened = span;
    for (std::uint64_t f = free; f; f &= f - 1) widened.insert(f & -f);
    // some e_i + w (w on the free coordinates) already lies in the span
    if (widened.reduce(bit(i)) == 0) return fits_from(i + 1, span);
    if (span.dimension() >= target_) return false;
    std::set<std::uint64_t> tried;
    for (std::uint64_t w = free;; w = (w - 1) & free) {
      const std::uint64_t coset = span.reduce(bit(i) | w);
      if (tried.insert(coset).second) {
        XorBasis next = span;
        next.insert(coset);
        auto key = next.key();
        key.push_back(i + 1);
        if (!failed_.count(key)) {
          if (fits_from(i + 1, next)) return true;
          failed_.insert(std::move(key));
        }
      }
      if (w == 0) break;
    }
    return false;
  }

  const SideInfoGraph& h_;
  std::size_t target_;
  std::set<std::vector<std::uint64_t>> failed_;
};

struct MaxIndependent {
  const std::vector<std::uint64_t>& adj;
  std::uint64_t best = 0;

  void grow(std::uint64_t chosen, std::uint64_t candidates) {
    if (candidates == 0) {
      if (std::popcount(chosen) > std::popcount(best)) best = chosen;
      return;
    }
    if (std::popcount(chosen) + std::popcount(candidates) <= std::popcount(best)) return;
    const auto v = static_cast<std::size_t>(std::countr_zero(candidates));
    grow(chosen | bit(v), candidates & ~bit(v) & ~adj[v]);
    grow(chosen, candidates & ~bit(v));
  }
};

// Exact coloring by DSATUR branch and bound.
class Coloring {
 public:
  explicit Coloring(const std::vector<std::uint64_t>& adj)
      : adj_(adj), n_(adj.size()), color_(n_, -1), best_color_(n_, 0) {
    best_ = n_ + 1;
  }

  std::vector<int> run() {
    if (n_ == 0) return {};
    search(0, 0);
    return best_color_;
  }

 private:
  void search(std::size_t colored, std::size_t used) {
    if (used >= best_) return;
    if (colored == n_) {
      best_ = used;
      best_color_ = color_;
      return;
    }
    std::size_t pick = n_;
    int pick_sat = -1;
    int pick_deg = -1;
    for (std::size_t v = 0; v < n_; ++v) {
      if (color_[v] >= 0) continue;
      std::uint64_t seen = 0;
      int deg = 0;
      for (std::uint64_t a = adj_[v]; a; a &= a - 1) {
        const auto u = static_cast<std::size_t>(std::countr_zero(a));
        if (color_[u] >= 0) {
          seen |= bit(static_cast<std::size_t>(color_[u]));
        } else {
          ++deg;
        }
      }
      const int sat = std::popcount(seen);
      if (sat > pick_sat || (sat == pick_sat && deg > pick_deg)) {
        pick = v;
        pick_sat = sat;
        pick_deg = deg;
      }
    }
    for (std::size_t c = 0; c <= used && c < best_; ++c) {
      bool clash = false;
      for (std::uint64_t a = adj_[pick]; a && !clash; a &= a - 1) {
        clash = color_[static_cast<std::size_t>(std::countr_zero(a))] == static_cast<int>(c);
      }
      if (clash) continue;
      color_[pick] = static_cast<int>(c);
      search(colored + 1, std::max(used, c + 1));
      color_[pick] = -1;
    }
  }

  const std::vector<std::uint64_t>& adj_;
  std::size_t n_;
  std::vector<int> color_;
  std::vector<int> best_color_;
  std::size_t best_;
};

}  // namespace

std::size_t minrank2(const SideInfoGraph& h, std::size_t cap) {
  const std::size_t n = h.vertex_count();
  require_cap(n, cap, "minrank2");
  for (std::size_t r = n == 0 ? 0 : 1; r < n; ++r) {
    if (MinrankSearch(h, r).run()) return r;
  }
  return n;
}

std::vector<std::size_t> max_independent_set(const SideInfoGraph& h, std::size_t cap) {
  require_cap(h.vertex_count(), cap, "independence number");
  const auto adj = h.either_direction();
  MaxIndependent search{adj};
  search.grow(0, all_bits(h.vertex_count()));
  return SymbolSet(search.best).items();
}

std::size_t independence_number(const SideInfoGraph& h, std::size_t cap) {
  return max_independent_set(h, cap).size();
}

std::vector<std::vector<std::size_t>> min_clique_cover(const SideInfoGraph& h, std::size_t cap) {
  const std::size_t n = h.vertex_count();
  require_cap(n, cap, "clique cover");
  const auto both = h.both_directions();
  std::vector<std::uint64_t> complement(n);
  for (std::size_t i = 0; i < n; ++i) complement[i] = ~both[i] & all_bits(n) & ~bit(i);
  const auto colors = Coloring(complement).run();
  std::vector<std::vector<std::size_t>> cover;
  for (std::size_t v = 0; v < n; ++v) {
    const auto c = static_cast<std::size_t>(colors[v]);
    if (cover.size() <= c) cover.resize(c + 1);
    cover[c].push_back(v);
  }
  return cover;
}

std::size_t clique_cover_number(const SideInfoGraph& h, std::size_t cap) {
  return min_clique_cover(h, cap).size();
}

std::size_t dmax(const DisseminationInstance& inst) {
  const std::size_t k = inst.node_count();
  std::vector<std::vector<std::size_t>> holders(inst.symbol_count());
  for (std::size_t l = 0; l < k; ++l) {
    for (auto j : inst.possess(l).items()) holders[j].push_back(l);
  }
  std::vector<std::vector<std::optional<std::size_t>>> dist(inst.symbol_count());
  std::size_t best = 0;
  for (std::size_t l = 0; l < k; ++l) {
    std::size_t sum = 0;
    for (auto eta : inst.request(l).items()) {
      if (dist[eta].empty()) dist[eta] = distances_from(inst.net(), holders[eta]);
      const auto d = dist[eta][l];
      if (!d) {
        throw InfeasibleInstance("x" + std::to_string(eta + 1) + " cannot reach node " + std::to_string(l + 1));
      }
      sum += *d;
    }
    best = std::max(best, sum);
  }
  return best;
}

std::size_t lower_bound(const DisseminationInstance& inst) {
  if (!is_bipartite(inst)) return dmax(inst);
  const auto h = side_info_graph(inst);
  try {
    return minrank2(h);
  } catch (const CapExceeded&) {
    return std::max(independence_number(h), dmax(inst));
  }
}

PartitionBound partition_upper_bound(const DisseminationInstance& inst) {
  const auto layout = bipartite_layout(inst);
  if (!layout) throw InputError("partition bound requires a bipartite instance");
  const std::size_t n = inst.symbol_count();
  const auto h = side_info_graph(inst);
  std::vector<std::vector<std::size_t>> options(n);
  std::uint64_t partitions = 1;
  for (std::size_t s = 0; s < n; ++s) {
    options[s] = inst.net().in_neighbors(layout->receiver_of_symbol[s]);
    if (options[s].empty()) {
      throw ReceiverUncovered("receiver of x" + std::to_string(s + 1) + " (node " +
                              std::to_string(layout->receiver_of_symbol[s] + 1) + ") hears no transmitter");
    }
    if (partitions <= kPartitionCap) partitions *= options[s].size();
  }

  std::unordered_map<std::uint64_t, std::size_t> minrank_memo;
  std::unordered_map<std::uint64_t, std::size_t> clc_memo;
  auto group_cost = [&](const std::vector<std::size_t>& choice,
                        const std::function<std::size_t(std::uint64_t)>& block_cost) {
    std::vector<std::pair<std::size_t, std::uint64_t>> groups;
    for (std::size_t s = 0; s < n; ++s) {
      const auto t = options[s][choice[s]];
      auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == t; });
      if (it == groups.end()) {
        groups.emplace_back(t, bit(s));
      } else {
        it->second |= bit(s);
      }
    }
    std::size_t total = 0;
    for (const auto& g : groups) total += block_cost(g.second);
    return total;
  };
  const std::function<std::size_t(std::uint64_t)> minrank_cost = [&](std::uint64_t mask) {
    auto it = minrank_memo.find(mask);
    if (it != minrank_memo.end()) return it->second;
    const auto v = minrank2(h.induced(SymbolSet(mask)));
    minrank_memo.emplace(mask, v);
    return v;
  };
  const std::function<std::size_t(std::uint64_t)> clc_cost = [&](std::uint64_t mask) {
    auto it = clc_memo.find(mask);
    if (it != clc_memo.end()) return it->second;
    const auto v = clique_cover_number(h.induced(SymbolSet(mask)));
    clc_memo.emplace(mask, v);
    return v;
  };

  auto optimize = [&](const std::function<std::size_t(std::uint64_t)>& block_cost) {
    std::vector<std::size_t> choice(n, 0);
    std::vector<std::size_t> best_choice = choice;
    std::size_t best = group_cost(choice, block_cost);
    if (partitions <= kPartitionCap) {
      while (true) {
        std::size_t s = 0;
        while (s < n && ++choice[s] == options[s].size()) choice[s++] = 0;
        if (s == n) break;
        const auto c = group_cost(choice, block_cost);
        if (c < best) {
          best = c;
          best_choice = choice;
        }
      }
    } else {
      // first-improvement local search over single reassignments
      bool improved = true;
      while (improved) {
        improved = false;
        for (std::size_t s = 0; s < n; ++s) {
          for (std::size_t o = 0; o < options[s].size(); ++o) {
            if (o == best_choice[s]) continue;
            auto trial = best_choice;
            trial[s] = o;
            const auto c = group_cost(trial, block_cost);
            if (c < best) {
              best = c;
              best_choice = std::move(trial);
              improved = true;
            }
          }
        }
      }
    }
    std::vector<std::size_t> nodes(n);
    for (std::size_t s = 0; s < n; ++s) nodes[s] = options[s][best_choice[s]];
    return std::make_pair(best, nodes);
  };

  PartitionBound out;
  out.partitions = partitions;
  out.greedy = partitions > kPartitionCap;
  std::tie(out.minrank_sum, out.assignment) = optimize(minrank_cost);
  std::tie(out.clique_cover_sum, out.clique_cover_assignment) = optimize(clc_cost);
  return out;
}

std::size_t BoundsReport::lower() const {
  std::size_t v = 0;
  for (const auto& b : {dmax, minrank2, alpha}) {
    if (b) v = std::max(v, *b);
  }
  return v;
}

BoundsReport compute_bounds(const DisseminationInstance& inst) {
  BoundsReport r;
  try {
    r.dmax = dmax(inst);
  } catch (const InfeasibleInstance& e) {
    r.notes.emplace_back("dmax", e.what());
  }
  r.bipartite = is_bipartite(inst);
  if (!r.bipartite) {
    for (const char* name : {"minrank2", "alpha", "clique_cover", "partition"}) {
      r.notes.emplace_back(name, "n/a: not bipartite");
    }
    return r;
  }
  const auto h = side_info_graph(inst);
  try {
    r.minrank2 = minrank2(h);
  } catch (const CapExceeded& e) {
    r.notes.emplace_back("minrank2", e.what());
  }
  try {
    r.independent_set = max_independent_set(h);
    r.alpha = r.independent_set.size();
  } catch (const CapExceeded& e) {
    r.notes.emplace_back("alpha", e.what());
  }
  try {
    r.cover = min_clique_cover(h);
    r.clique_cover = r.cover.size();
  } catch (const CapExceeded& e) {
    r.notes.emplace_back("clique_cover", e.what());
  }
  try {
    r.partition = partition_upper_bound(inst);
  } catch (const Error& e) {
    r.notes.emplace_back("partition", e.what());
  }
  return r;
}

}  // namespace dissem
