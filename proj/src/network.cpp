#include "dissem/network.hpp"

#include <algorithm>
#include <deque>

#include "dissem/errors.hpp"

namespace dissem {

DirectedNetwork::DirectedNetwork(std::size_t k, std::vector<Edge> edges)
    : k_(k), edges_(std::move(edges)), in_(k), out_(k) {
  if (k == 0) throw InputError("network needs at least one node");
  std::sort(edges_.begin(), edges_.end());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto [u, v] = edges_[i];
    if (u >= k || v >= k) {
      throw InputError("edge (" + std::to_string(u + 1) + "," + std::to_string(v + 1) +
                       ") references a node outside 1.." + std::to_string(k));
    }
    if (u == v) throw InputError("self-loop at node " + std::to_string(u + 1));
    if (i > 0 && edges_[i - 1] == edges_[i]) {
      throw InputError("parallel edge (" + std::to_string(u + 1) + "," + std::to_string(v + 1) + ")");
    }
    out_[u].push_back(v);
    in_[v].push_back(u);
  }
  for (auto& l : in_) std::sort(l.begin(), l.end());
}

DirectedNetwork DirectedNetwork::complete(std::size_t k) {
  std::vector<Edge> e;
  for (std::size_t u = 0; u < k; ++u) {
    for (std::size_t v = 0; v < k; ++v) {
      if (u != v) e.emplace_back(u, v);
    }
  }
  return {k, std::move(e)};
}

DirectedNetwork DirectedNetwork::cycle(std::size_t k) {
  std::vector<Edge> e;
  if (k > 1) {
    for (std::size_t u = 0; u < k; ++u) e.emplace_back(u, (u + 1) % k);
  }
  return {k, std::move(e)};
}

bool DirectedNetwork::has_edge(std::size_t u, std::size_t v) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

DirectedNetwork DirectedNetwork::with_edge(std::size_t u, std::size_t v) const {
  if (has_edge(u, v)) return *this;
  auto e = edges_;
  e.emplace_back(u, v);
  return {k_, std::move(e)};
}

IntMatrix adjacency(const DirectedNetwork& net, bool with_self_loops) {
  const std::size_t k = net.node_count();
  std::vector<std::uint64_t> d(k * k, 0);
  for (const auto& [u, v] : net.edges()) d[v * k + u] = 1;
  if (with_self_loops) {
    for (std::size_t i = 0; i < k; ++i) d[i * k + i] = 1;
  }
  return {k, k, std::move(d)};
}

std::optional<std::size_t> solvability_index(const DirectedNetwork& net) {
  const auto d = adjacency(net, true);
  auto power = d;
  for (std::size_t r = 1; r <= net.node_count(); ++r) {
    if (power.all_positive()) return r;
    power = power.boolean_product(d);
  }
  return std::nullopt;
}

bool strongly_connected(const DirectedNetwork& net) {
  return solvability_index(net).has_value();
}

std::vector<std::optional<std::size_t>> distances_from(const DirectedNetwork& net,
                                                       const std::vector<std::size_t>& sources) {
  std::vector<std::optional<std::size_t>> dist(net.node_count());
  std::deque<std::size_t> frontier;
  for (auto s : sources) {
    if (s >= net.node_count()) throw InputError("source node out of range");
    if (!dist[s]) {
      dist[s] = 0;
      frontier.push_back(s);
    }
  }
  while (!frontier.empty()) {
    const auto u = frontier.front();
    frontier.pop_front();
    for (auto v : net.out_neighbors(u)) {
      if (!dist[v]) {
        dist[v] = *dist[u] + 1;
        frontier.push_back(v);
      }
    }
  }
  return dist;
}

std::optional<std::size_t> shortest_dist(const DirectedNetwork& net,
                                         const std::vector<std::size_t>& sources,
                                         std::size_t target) {
  if (target >= net.node_count()) throw InputError("target node out of range");
  if (sources.empty()) return std::nullopt;
  return distances_from(net, sources)[target];
}

bool is_feasible(const DirectedNetwork& net, const std::vector<SymbolSet>& possess,
                 const std::vector<SymbolSet>& request) {
  const std::size_t k = net.node_count();
  if (possess.size() != k || request.size() != k) throw InputError("is_feasible: per-node set count mismatch");
  // reach[v] = symbols held by some node with a path to v (including v itself)
  std::vector<SymbolSet> reach(possess);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [u, v] : net.edges()) {
      const auto merged = reach[v] | reach[u];
      if (!(merged == reach[v])) {
        reach[v] = merged;
        changed = true;
      }
    }
  }
  for (std::size_t v = 0; v < k; ++v) {
    if (!request[v].subset_of(reach[v])) return false;
  }
  return true;
}

}  // namespace dissem
