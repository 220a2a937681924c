#include "dissem/one_round.hpp"

#include <algorithm>
#include <numeric>

#include "dissem/errors.hpp"
#include "dissem/rng.hpp"

namespace dissem {

std::size_t TransmissionScheme::transmissions() const {
  std::size_t t = 0;
  for (const auto& m : per_node) t += m.rows();
  return t;
}

namespace {

void require_choice_shape(const DisseminationInstance& inst, std::span<const FieldMatrix> choice) {
  if (choice.size() != inst.node_count()) {
    throw InputError("choice has " + std::to_string(choice.size()) + " matrices for " +
                     std::to_string(inst.node_count()) + " nodes");
  }
  for (std::size_t l = 0; l < choice.size(); ++l) {
    const auto& a = choice[l];
    if (a.cols() != inst.symbol_count() || a.modulus() != inst.field()) {
      throw InputError("choice for node " + std::to_string(l + 1) + " has the wrong shape");
    }
    const auto held = inst.possess(l);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      for (std::size_t c = 0; c < a.cols(); ++c) {
        if (a.at(r, c) != 0 && !held.contains(c)) {
          throw InputError("support violation: node " + std::to_string(l + 1) + " combines x" +
                           std::to_string(c + 1) + " which it does not hold");
        }
      }
    }
  }
}

RowSpace side_information(const DisseminationInstance& inst, std::size_t node) {
  RowSpace s(inst.field(), inst.symbol_count());
  for (auto j : inst.possess(node).items()) s.insert(unit_vector(inst.symbol_count(), j));
  return s;
}

// Dimension the requests of `node` still need on top of `known`.
std::size_t request_deficit(const RowSpace& known, SymbolSet request, std::size_t n) {
  RowSpace s = known;
  std::size_t d = 0;
  for (auto j : request.items()) {
    if (s.insert(unit_vector(n, j))) ++d;
  }
  return d;
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> unsatisfied_requests(
    const DisseminationInstance& inst, std::span<const FieldMatrix> choice) {
  require_choice_shape(inst, choice);
  std::vector<std::pair<std::size_t, std::size_t>> missing;
  for (std::size_t l = 0; l < inst.node_count(); ++l) {
    if (inst.request(l).empty()) continue;
    RowSpace heard = side_information(inst, l);
    for (auto i : inst.net().in_neighbors(l)) heard.insert_all(choice[i]);
    for (auto eta : inst.request(l).items()) {
      if (!heard.contains(unit_vector(inst.symbol_count(), eta))) missing.emplace_back(l, eta);
    }
  }
  return missing;
}

bool check_condition(const DisseminationInstance& inst, std::span<const FieldMatrix> choice) {
  return unsatisfied_requests(inst, choice).empty();
}

std::vector<FieldMatrix> flooding_choice(const DisseminationInstance& inst) {
  std::vector<FieldMatrix> out;
  out.reserve(inst.node_count());
  for (std::size_t l = 0; l < inst.node_count(); ++l) {
    const auto held = inst.possess(l).items();
    FieldVector data;
    for (auto j : held) {
      auto e = unit_vector(inst.symbol_count(), j);
      data.insert(data.end(), e.begin(), e.end());
    }
    out.emplace_back(inst.field(), held.size(), inst.symbol_count(), std::move(data));
  }
  return out;
}

std::vector<std::vector<FieldMatrix>> enumerate_subspaces(std::uint32_t q, std::size_t n,
                                                          SymbolSet coords, std::size_t max_dim) {
  const auto cols = coords.items();
  const std::size_t m = cols.size();
  std::vector<std::vector<FieldMatrix>> groups;
  for (std::size_t d = 0; d <= std::min(m, max_dim); ++d) {
    std::vector<FieldMatrix> group;
    // pivot sets as ascending index combinations
    std::vector<std::size_t> piv(d);
    std::iota(piv.begin(), piv.end(), 0);
    while (true) {
      std::vector<bool> is_pivot(m, false);
      for (auto p : piv) is_pivot[p] = true;
      // free cells (row, local col) to the right of each pivot
      std::vector<std::pair<std::size_t, std::size_t>> free_cells;
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = piv[r] + 1; c < m; ++c) {
          if (!is_pivot[c]) free_cells.emplace_back(r, c);
        }
      }
      std::vector<std::uint8_t> values(free_cells.size(), 0);
      while (true) {
        FieldVector data(d * n, 0);
        for (std::size_t r = 0; r < d; ++r) data[r * n + cols[piv[r]]] = 1;
        for (std::size_t f = 0; f < free_cells.size(); ++f) {
          data[free_cells[f].first * n + cols[free_cells[f].second]] = values[f];
        }
        group.emplace_back(q, d, n, std::move(data));
        // odometer over free values
        std::size_t f = 0;
        while (f < values.size() && ++values[f] == q) values[f++] = 0;
        if (f == values.size()) break;
      }
      // next combination
      std::size_t i = d;
      while (i > 0 && piv[i - 1] == m - d + i - 1) --i;
      if (i == 0) break;
      ++piv[i - 1];
      for (std::size_t j = i; j < d; ++j) piv[j] = piv[j - 1] + 1;
    }
    std::sort(group.begin(), group.end(),
              [](const FieldMatrix& a, const FieldMatrix& b) { return a.data() < b.data(); });
    groups.push_back(std::move(group));
  }
  return groups;
}

namespace {

class ExactSearch {
 public:
  ExactSearch(const DisseminationInstance& inst, const ExactCaps& caps) : inst_(inst), caps_(caps) {
    const std::size_t k = inst.node_count();
    const std::size_t n = inst.symbol_count();
    std::vector<long> receiver_index(k, -1);
    for (std::size_t l = 0; l < k; ++l) {
      if (!inst.request(l).empty()) {
        receiver_index[l] = static_cast<long>(receivers_.size());
        receivers_.push_back(l);
      }
    }
    for (std::size_t l = 0; l < k; ++l) {
      if (inst.possess(l).empty()) continue;
      std::size_t demand = 0;
      std::vector<std::size_t> reached;
      for (auto v : inst.net().out_neighbors(l)) {
        if (receiver_index[v] >= 0) {
          reached.push_back(static_cast<std::size_t>(receiver_index[v]));
          demand += inst.request(v).size();
        }
      }
      if (reached.empty()) continue;
      // A sender never needs more dimensions than its listeners request in total.
      std::size_t bound = std::min(inst.possess(l).size(), demand);
      if (caps.per_node_limit) bound = std::min(bound, *caps.per_node_limit);
      senders_.push_back(l);
      sender_receivers_.push_back(std::move(reached));
      dim_bound_.push_back(bound);
    }
    if (inst.field() > caps.max_field) {
      throw SearchCapExceeded("exact search capped at GF(" + std::to_string(caps.max_field) +
                              "), instance uses GF(" + std::to_string(inst.field()) + ")");
    }
    if (senders_.size() > caps.max_senders) {
      throw SearchCapExceeded("exact search capped at " + std::to_string(caps.max_senders) +
                              " active senders, instance has " + std::to_string(senders_.size()));
    }
    for (auto s : senders_) {
      if (inst.possess(s).size() > caps.max_possession) {
        throw SearchCapExceeded("exact search capped at " + std::to_string(caps.max_possession) +
                                " held symbols per sender, node " + std::to_string(s + 1) + " holds " +
                                std::to_string(inst.possess(s).size()));
      }
    }
    for (std::size_t i = 0; i < senders_.size(); ++i) {
      subspaces_.push_back(enumerate_subspaces(inst.field(), n, inst.possess(senders_[i]), dim_bound_[i]));
    }
    // future_cap_[r][i]: dimensions senders i.. can still add for receiver r
    future_cap_.assign(receivers_.size(), std::vector<std::size_t>(senders_.size() + 1, 0));
    for (std::size_t i = senders_.size(); i-- > 0;) {
      for (std::size_t r = 0; r < receivers_.size(); ++r) future_cap_[r][i] = future_cap_[r][i + 1];
      for (auto r : sender_receivers_[i]) future_cap_[r][i] += dim_bound_[i];
    }
    for (auto l : receivers_) {
      known_.push_back(side_information(inst, l));
      deficit_.push_back(request_deficit(known_.back(), inst.request(l), n));
    }
    chosen_.assign(senders_.size(), nullptr);
  }

  OneRoundResult run() {
    const std::size_t k = inst_.node_count();
    const std::size_t n = inst_.symbol_count();
    std::size_t lower = 0;
    for (auto d : deficit_) lower = std::max(lower, d);
    const std::size_t upper = std::accumulate(dim_bound_.begin(), dim_bound_.end(), std::size_t{0});
    for (std::size_t budget = lower; budget <= upper; ++budget) {
      if (dfs(0, budget)) {
        OneRoundResult res;
        res.method = SolveMethod::exact;
        res.scheme.q = inst_.field();
        res.scheme.n = n;
        res.scheme.per_node.assign(k, FieldMatrix(inst_.field(), 0, n));
        res.ranks.assign(k, 0);
        for (std::size_t i = 0; i < senders_.size(); ++i) {
          res.scheme.per_node[senders_[i]] = *chosen_[i];
          res.ranks[senders_[i]] = chosen_[i]->rows();
        }
        res.tau = budget;
        res.explored = explored_;
        return res;
      }
    }
    throw NotOneRoundSolvable("no choice within the per-node transmission limit satisfies every request");
  }

 private:
  bool dfs(std::size_t i, std::size_t remaining) {
    if (++explored_ > caps_.node_budget) {
      throw SearchCapExceeded("exact search exceeded " + std::to_string(caps_.node_budget) +
                              " search nodes");
    }
    for (std::size_t r = 0; r < receivers_.size(); ++r) {
      if (deficit_[r] > std::min(future_cap_[r][i], remaining)) return false;
    }
    if (i == senders_.size()) return true;
    const auto& groups = subspaces_[i];
    const auto& listeners = sender_receivers_[i];
    for (std::size_t d = 0; d < groups.size() && d <= remaining; ++d) {
      for (const auto& w : groups[d]) {
        std::vector<RowSpace> saved_known;
        std::vector<std::size_t> saved_deficit;
        saved_known.reserve(listeners.size());
        if (d > 0) {
          for (auto r : listeners) {
            saved_known.push_back(known_[r]);
            saved_deficit.push_back(deficit_[r]);
            known_[r].insert_all(w);
            deficit_[r] = request_deficit(known_[r], inst_.request(receivers_[r]), inst_.symbol_count());
          }
        }
        chosen_[i] = &w;
        if (dfs(i + 1, remaining - d)) return true;
        if (d > 0) {
          for (std::size_t t = 0; t < listeners.size(); ++t) {
            known_[listeners[t]] = std::move(saved_known[t]);
            deficit_[listeners[t]] = saved_deficit[t];
          }
        }
      }
    }
    return false;
  }

  const DisseminationInstance& inst_;
  const ExactCaps& caps_;
  std::vector<std::size_t> receivers_;
  std::vector<std::size_t> senders_;
  std::vector<std::vector<std::size_t>> sender_receivers_;
  std::vector<std::size_t> dim_bound_;
  std::vector<std::vector<std::vector<FieldMatrix>>> subspaces_;
  std::vector<std::vector<std::size_t>> future_cap_;
  std::vector<RowSpace> known_;
  std::vector<std::size_t> deficit_;
  std::vector<const FieldMatrix*> chosen_;
  std::uint64_t explored_ = 0;
};

void require_one_round_solvable(const DisseminationInstance& inst) {
  const auto flood = flooding_choice(inst);
  const auto missing = unsatisfied_requests(inst, flood);
  if (missing.empty()) return;
  std::string msg = "not solvable in one round: even flooding leaves";
  for (std::size_t i = 0; i < missing.size() && i < 8; ++i) {
    msg += " (node " + std::to_string(missing[i].first + 1) + ", x" +
           std::to_string(missing[i].second + 1) + ")";
  }
  if (missing.size() > 8) msg += " ...";
  throw NotOneRoundSolvable(msg + " undecodable");
}

// Random basis of span{e_j : j in held}.
FieldMatrix random_basis(std::uint32_t q, std::size_t n, SymbolSet held, Rng& rng) {
  const auto cols = held.items();
  const std::size_t m = cols.size();
  while (true) {
    FieldVector data(m * n, 0);
    for (std::size_t r = 0; r < m; ++r) {
      for (auto c : cols) data[r * n + c] = static_cast<std::uint8_t>(uniform_below(rng, q));
    }
    FieldMatrix b(q, m, n, std::move(data));
    if (rank(b) == m) return b;
  }
}

}  // namespace

OneRoundResult solve_exact(const DisseminationInstance& inst, const ExactCaps& caps) {
  require_one_round_solvable(inst);
  ExactSearch search(inst, caps);
  return search.run();
}

OneRoundResult solve_heuristic(const DisseminationInstance& inst, std::uint64_t seed,
                               std::size_t iterations) {
  require_one_round_solvable(inst);
  const std::size_t k = inst.node_count();
  const std::size_t n = inst.symbol_count();
  Rng rng(seed);
  std::optional<std::vector<FieldMatrix>> best;
  std::size_t best_tau = 0;
  for (std::size_t it = 0; it < std::max<std::size_t>(iterations, 1); ++it) {
    // first restart deletes from plain flooding, later ones from random bases
    std::vector<std::vector<FieldVector>> rows(k);
    for (std::size_t l = 0; l < k; ++l) {
      const FieldMatrix b = it == 0 ? flooding_choice(inst)[l] : random_basis(inst.field(), n, inst.possess(l), rng);
      for (std::size_t r = 0; r < b.rows(); ++r) rows[l].emplace_back(b.row(r).begin(), b.row(r).end());
    }
    std::vector<std::pair<std::size_t, std::size_t>> order;
    for (std::size_t l = 0; l < k; ++l) {
      for (std::size_t r = 0; r < rows[l].size(); ++r) order.emplace_back(l, r);
    }
    shuffle_in_place(order, rng);
    std::vector<std::vector<bool>> keep(k);
    for (std::size_t l = 0; l < k; ++l) keep[l].assign(rows[l].size(), true);
    auto build = [&] {
      std::vector<FieldMatrix> choice;
      for (std::size_t l = 0; l < k; ++l) {
        FieldVector data;
        std::size_t cnt = 0;
        for (std::size_t r = 0; r < rows[l].size(); ++r) {
          if (!keep[l][r]) continue;
          data.insert(data.end(), rows[l][r].begin(), rows[l][r].end());
          ++cnt;
        }
        choice.emplace_back(inst.field(), cnt, n, std::move(data));
      }
      return choice;
    };
    for (const auto& [l, r] : order) {
      keep[l][r] = false;
      if (!check_condition(inst, build())) keep[l][r] = true;
    }
    auto choice = build();
    const std::size_t tau = std::accumulate(choice.begin(), choice.end(), std::size_t{0},
                                            [](std::size_t s, const FieldMatrix& m) { return s + m.rows(); });
    if (!best || tau < best_tau) {
      best = std::move(choice);
      best_tau = tau;
    }
  }
  OneRoundResult res;
  res.method = SolveMethod::heuristic;
  res.scheme.q = inst.field();
  res.scheme.n = n;
  res.tau = best_tau;
  res.explored = iterations;
  for (std::size_t l = 0; l < k; ++l) {
    res.scheme.per_node.push_back(rref((*best)[l]).reduced);
    res.ranks.push_back(res.scheme.per_node.back().rows());
  }
  return res;
}

std::pair<FieldMatrix, std::vector<ReceivedRow>> received_rows(const DisseminationInstance& inst,
                                                               const TransmissionScheme& scheme,
                                                               std::size_t node) {
  if (scheme.per_node.size() != inst.node_count()) throw InputError("scheme node count mismatch");
  std::vector<FieldMatrix> blocks;
  std::vector<ReceivedRow> origin;
  for (auto i : inst.net().in_neighbors(node)) {
    blocks.push_back(scheme.per_node[i]);
    for (std::size_t r = 0; r < scheme.per_node[i].rows(); ++r) origin.push_back({i, r});
  }
  return {stack(blocks, inst.symbol_count(), inst.field()), std::move(origin)};
}

Decoding decode(const DisseminationInstance& inst, const TransmissionScheme& scheme, std::size_t node,
                std::size_t symbol) {
  auto [heard, origin] = received_rows(inst, scheme, node);
  const auto full = stack({heard, possession_diag(inst, node)});
  const auto coeffs = solve_in_row_space(full, unit_vector(inst.symbol_count(), symbol));
  if (!coeffs) {
    throw NoDecoding("node " + std::to_string(node + 1) + " cannot recover x" + std::to_string(symbol + 1));
  }
  Decoding out;
  out.received = std::move(origin);
  out.alpha.assign(coeffs->begin(), coeffs->begin() + static_cast<std::ptrdiff_t>(heard.rows()));
  out.beta.assign(coeffs->begin() + static_cast<std::ptrdiff_t>(heard.rows()), coeffs->end());
  return out;
}

}  // namespace dissem
