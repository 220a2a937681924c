#pragma once
// A dissemination problem: a network, a field, and per-node possession and
// request sets over n symbols.

#include <cstdint>
#include <optional>
#include <vector>

#include "dissem/field.hpp"
#include "dissem/network.hpp"
#include "dissem/star_algebra.hpp"
#include "dissem/symbols.hpp"

namespace dissem {

class DisseminationInstance {
 public:
  /// Checks the base invariants: prime field, 1 <= n <= 64, one set per node,
  /// indices below n, possession and request disjoint at every node.
  DisseminationInstance(std::uint32_t q, std::size_t n, DirectedNetwork net,
                        std::vector<SymbolSet> possess, std::vector<SymbolSet> request);

  std::uint32_t field() const { return q_; }
  std::size_t symbol_count() const { return n_; }
  std::size_t node_count() const { return net_.node_count(); }
  const DirectedNetwork& net() const { return net_; }
  SymbolSet possess(std::size_t node) const { return possess_.at(node); }
  SymbolSet request(std::size_t node) const { return request_.at(node); }
  const std::vector<SymbolSet>& possess_all() const { return possess_; }
  const std::vector<SymbolSet>& request_all() const { return request_; }

  bool has_requests() const;
  bool feasible() const;
  /// P_l u T_l = [n] at every node (precondition of the multi-round pipeline).
  bool covers_all_symbols() const;

  bool operator==(const DisseminationInstance&) const = default;

 private:
  std::uint32_t q_;
  std::size_t n_;
  DirectedNetwork net_;
  std::vector<SymbolSet> possess_;
  std::vector<SymbolSet> request_;
};

/// Compact possession pattern: k x n, row l has * exactly on P_l.
StarMatrix possession_family(const DisseminationInstance& inst);
/// n x n 0/1 diagonal with ones on P_l.
FieldMatrix possession_diag(const DisseminationInstance& inst, std::size_t node);
/// n x n 0/1 diagonal with ones on T_l.
FieldMatrix query_diag(const DisseminationInstance& inst, std::size_t node);

/// Transmitters hold every symbol, request nothing and only send; receivers
/// request one symbol each (one receiver per symbol) and only listen.
struct BipartiteLayout {
  std::vector<std::size_t> transmitters;
  std::vector<std::size_t> receiver_of_symbol;  // symbol i -> its receiver node
};

std::optional<BipartiteLayout> bipartite_layout(const DisseminationInstance& inst);
bool is_bipartite(const DisseminationInstance& inst);

/// Directed graph on symbols/receivers: edge (i, j) when receiver i holds symbol j.
class SideInfoGraph {
 public:
  explicit SideInfoGraph(std::size_t n);
  /// out[i] bit j set iff edge (i, j); self edges are dropped.
  SideInfoGraph(std::size_t n, std::vector<std::uint64_t> out);

  std::size_t vertex_count() const { return n_; }
  bool has_edge(std::size_t i, std::size_t j) const { return (out_[i] >> j) & 1u; }
  std::uint64_t out_mask(std::size_t i) const { return out_[i]; }
  std::size_t edge_count() const;
  bool is_symmetric() const;

  SideInfoGraph with_edge(std::size_t i, std::size_t j) const;
  /// Subgraph induced by `vertices`, relabeled 0.. in ascending order.
  SideInfoGraph induced(SymbolSet vertices) const;
  /// Undirected view with an edge where either direction exists.
  std::vector<std::uint64_t> either_direction() const;
  /// Undirected view with an edge only where both directions exist.
  std::vector<std::uint64_t> both_directions() const;

  bool operator==(const SideInfoGraph&) const = default;

 private:
  std::size_t n_;
  std::vector<std::uint64_t> out_;
};

/// Throws InputError for non-bipartite instances.
SideInfoGraph side_info_graph(const DisseminationInstance& inst);

}  // namespace dissem
