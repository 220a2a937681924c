#include "dissem/generator.hpp"

#include <numeric>

#include "dissem/errors.hpp"

namespace dissem {

namespace {

void check_params(std::size_t nodes, std::size_t diameter) {
  if (nodes == 0) throw InputError("need at least one node");
  if (diameter == 0) throw InputError("diameter must be at least 1");
  const std::size_t reachable = nodes == 1 ? 1 : nodes - 1;
  if (diameter > reachable) {
    throw InputError("diameter " + std::to_string(diameter) + " impossible with " + std::to_string(nodes) +
                     " nodes (at most " + std::to_string(reachable) + ")");
  }
}

}  // namespace

DirectedNetwork random_network(std::size_t nodes, std::size_t diameter, Rng& rng, std::size_t retry_budget) {
  check_params(nodes, diameter);
  for (std::size_t attempt = 0; attempt < retry_budget; ++attempt) {
    std::vector<std::size_t> order(nodes);
    std::iota(order.begin(), order.end(), 0);
    shuffle_in_place(order, rng);
    std::vector<Edge> edges;
    std::vector<bool> taken(nodes * nodes, false);
    if (nodes > 1) {
      for (std::size_t i = 0; i < nodes; ++i) {
        const auto u = order[i];
        const auto v = order[(i + 1) % nodes];
        edges.emplace_back(u, v);
        taken[u * nodes + v] = true;
      }
    }
    for (std::size_t u = 0; u < nodes; ++u) {
      for (std::size_t v = 0; v < nodes; ++v) {
        if (u != v && !taken[u * nodes + v] && coin(rng, 0.5)) edges.emplace_back(u, v);
      }
    }
    DirectedNetwork net(nodes, std::move(edges));
    if (solvability_index(net) == diameter) return net;
  }
  throw GenerationFailed("no network with solvability index " + std::to_string(diameter) + " on " +
                         std::to_string(nodes) + " nodes after " + std::to_string(retry_budget) + " attempts");
}

DisseminationInstance random_instance(const GenParams& p, Rng& rng) {
  check_params(p.nodes, p.diameter);
  if (p.symbols == 0 || p.symbols > SymbolSet::kMaxSymbols) throw InputError("symbol count must be in 1..64");
  if (p.nodes > 63) throw InputError("generator supports at most 63 nodes");
  require_field(p.field);
  const auto net = random_network(p.nodes, p.diameter, rng, p.retry_budget);
  const std::uint64_t subsets = (std::uint64_t{1} << p.nodes) - 1;
  for (std::size_t attempt = 0; attempt < p.retry_budget; ++attempt) {
    std::vector<SymbolSet> possess(p.nodes);
    std::vector<SymbolSet> request(p.nodes);
    bool wanted = false;
    for (std::size_t s = 0; s < p.symbols; ++s) {
      const std::uint64_t holders = 1 + uniform_below(rng, subsets);
      for (std::size_t l = 0; l < p.nodes; ++l) {
        if ((holders >> l) & 1u) {
          possess[l].insert(s);
        } else {
          request[l].insert(s);
          wanted = true;
        }
      }
    }
    if (wanted) return {p.field, p.symbols, net, std::move(possess), std::move(request)};
  }
  throw GenerationFailed("every draw left no node requesting anything");
}

std::vector<DisseminationInstance> generate_corpus(const GenParams& p) {
  Rng rng(p.seed);
  std::vector<DisseminationInstance> out;
  out.reserve(p.count);
  for (std::size_t i = 0; i < p.count; ++i) out.push_back(random_instance(p, rng));
  return out;
}

}  // namespace dissem
