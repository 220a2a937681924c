#pragma once
// Graph bounds on the number of one-round transmissions.
//
// For bipartite instances the side-information graph H gives
//   alpha(H) <= minrank2(H) <= clc(H),
// with minrank2 a lower bound and per-transmitter partitions an upper bound.
// For any instance the summed hop distances give the dmax lower bound.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dissem/instance.hpp"

namespace dissem {

inline constexpr std::size_t kMinrankCap = 10;
inline constexpr std::size_t kCliqueCap = 20;
inline constexpr std::uint64_t kPartitionCap = 100'000;

/// Minimum GF(2) rank of a matrix with unit diagonal whose off-diagonal ones
/// sit only on edges of H. Throws CapExceeded above `cap` vertices.
std::size_t minrank2(const SideInfoGraph& h, std::size_t cap = kMinrankCap);

/// Maximum independent set of the undirected view with an edge wherever
/// either direction exists. Vertices ascending.
std::vector<std::size_t> max_independent_set(const SideInfoGraph& h, std::size_t cap = kCliqueCap);
std::size_t independence_number(const SideInfoGraph& h, std::size_t cap = kCliqueCap);

/// Minimum cover by cliques of the undirected view with an edge only where
/// both directions exist (those cliques fit an all-ones block).
std::vector<std::vector<std::size_t>> min_clique_cover(const SideInfoGraph& h,
                                                       std::size_t cap = kCliqueCap);
std::size_t clique_cover_number(const SideInfoGraph& h, std::size_t cap = kCliqueCap);

/// max over nodes of the summed shortest distances from the nearest holder of
/// each requested symbol. Throws InfeasibleInstance when a symbol cannot reach
/// its requester.
std::size_t dmax(const DisseminationInstance& inst);

/// minrank2 of the side-information graph for bipartite instances, falling
/// back to max(alpha, dmax) past the minrank cap; dmax otherwise.
std::size_t lower_bound(const DisseminationInstance& inst);

struct PartitionBound {
  std::size_t minrank_sum = 0;
  /// transmitter node of each symbol's receiver, indexed by symbol
  std::vector<std::size_t> assignment;
  std::size_t clique_cover_sum = 0;
  std::vector<std::size_t> clique_cover_assignment;
  std::uint64_t partitions = 0;  // assignments available
  bool greedy = false;           // too many to enumerate; local search used
};

/// Min over receiver -> in-neighbor transmitter assignments of the summed
/// minrank2 of the per-transmitter induced graphs; also the summed clc.
/// Throws InputError for non-bipartite instances, ReceiverUncovered when a
/// receiver hears no transmitter.
PartitionBound partition_upper_bound(const DisseminationInstance& inst);

struct BoundsReport {
  std::optional<std::size_t> dmax;
  std::string dmax_note;
  bool bipartite = false;
  std::optional<std::size_t> minrank2;
  std::optional<std::size_t> alpha;
  std::optional<std::size_t> clique_cover;
  std::optional<PartitionBound> partition;
  std::vector<std::size_t> independent_set;
  std::vector<std::vector<std::size_t>> cover;
  /// why a bound is absent, keyed by bound name
  std::vector<std::pair<std::string, std::string>> notes;

  std::size_t lower() const;
};

/// Every applicable bound; inapplicable or capped ones carry a note instead.
BoundsReport compute_bounds(const DisseminationInstance& inst);

}  // namespace dissem
