#pragma once
// Directed network graphs. Nodes are 0-indexed here; files and reports use 1-indexing.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "dissem/star_algebra.hpp"
#include "dissem/symbols.hpp"

namespace dissem {

using Edge = std::pair<std::size_t, std::size_t>;

class DirectedNetwork {
 public:
  /// Rejects self-loops, out-of-range endpoints and parallel edges.
  DirectedNetwork(std::size_t k, std::vector<Edge> edges);

  static DirectedNetwork complete(std::size_t k);
  static DirectedNetwork cycle(std::size_t k);

  std::size_t node_count() const { return k_; }
  /// Sorted, duplicate free.
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(std::size_t u, std::size_t v) const;
  const std::vector<std::size_t>& in_neighbors(std::size_t v) const { return in_[v]; }
  const std::vector<std::size_t>& out_neighbors(std::size_t v) const { return out_[v]; }

  DirectedNetwork with_edge(std::size_t u, std::size_t v) const;

  bool operator==(const DirectedNetwork& o) const { return k_ == o.k_ && edges_ == o.edges_; }

 private:
  std::size_t k_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::vector<std::size_t>> out_;
};

/// Transposed adjacency: entry (i, j) is 1 iff (j, i) is an edge. With
/// `with_self_loops` the diagonal is forced to 1.
IntMatrix adjacency(const DirectedNetwork& net, bool with_self_loops);

/// Smallest r <= k with every entry of D^r positive (D with self-loops), or
/// nullopt when the graph is not strongly connected. Powers saturate at 1.
std::optional<std::size_t> solvability_index(const DirectedNetwork& net);

bool strongly_connected(const DirectedNetwork& net);

/// BFS distance from the nearest source to `target`; 0 if target is a source.
std::optional<std::size_t> shortest_dist(const DirectedNetwork& net,
                                         const std::vector<std::size_t>& sources,
                                         std::size_t target);

/// BFS distances from `sources` to every node.
std::vector<std::optional<std::size_t>> distances_from(const DirectedNetwork& net,
                                                       const std::vector<std::size_t>& sources);

/// Every requested symbol has a holder with a directed path to the requester.
bool is_feasible(const DirectedNetwork& net, const std::vector<SymbolSet>& possess,
                 const std::vector<SymbolSet>& request);

}  // namespace dissem
