#pragma once
// Multi-round dissemination on networks where every node eventually wants
// every symbol (P_l u T_l = [n]).
//
// Possession spreads one hop per round: the compact pattern after round i is
// D * (pattern after round i-1), with D the transposed adjacency plus
// self-loops. A round is admissible when each node ends it knowing exactly the
// symbols of its new pattern row, so per-round knowledge is always a
// coordinate subspace and coding vectors can be written in symbol
// coordinates.

#include <cstdint>
#include <span>
#include <vector>

#include "dissem/instance.hpp"
#include "dissem/one_round.hpp"

namespace dissem {

/// D^i * a with nonzero integers collapsed to 1 (possession after i rounds).
StarMatrix evolve(const StarMatrix& a, const IntMatrix& d, std::size_t i);

struct RoundContext {
  std::size_t round = 1;
  IntMatrix d;          // with self-loops
  StarMatrix before;    // compact k x n possession before the round
  StarMatrix after;     // evolve(before, d, 1)

  static RoundContext make(std::size_t round, IntMatrix d, StarMatrix before);
};

/// Dimension node j must reach: the number of * in row j of `after`.
std::size_t round_rhs_rank(const RoundContext& ctx, std::size_t j);

/// Rank of what j hears (own row included through the self-loop) stacked
/// with the unit vectors of its pre-round symbols equals round_rhs_rank.
/// Throws InputError when a node's rows leave its pre-round symbols.
bool check_round(const RoundContext& ctx, std::span<const FieldMatrix> choice, std::size_t j);

/// Every node sends each symbol it holds before the round.
std::vector<FieldMatrix> construct_flood_round(const RoundContext& ctx);

/// The one-round problem a round poses: hold `before`, want `after`.
DisseminationInstance round_instance(const DirectedNetwork& net, const RoundContext& ctx);

enum class Strategy { exact, flood, random };

struct RoundOptions {
  Strategy strategy = Strategy::exact;
  ExactCaps caps;
  std::uint64_t seed = 0;
  std::size_t restarts = 64;
};

struct RoundChoice {
  std::vector<FieldMatrix> per_node;
  std::size_t tau = 0;
  bool fallback = false;  // exact search hit a cap, heuristic used
};

RoundChoice minimize_round(const DirectedNetwork& net, const RoundContext& ctx,
                           const RoundOptions& opts = {});

struct MultiRoundScheme {
  std::uint32_t q = 2;
  std::size_t n = 0;
  std::vector<std::vector<FieldMatrix>> rounds;  // rounds[i][node]
  std::size_t tau_total = 0;
  std::vector<std::size_t> tau_per_round;
  std::vector<bool> fallback_rounds;

  bool operator==(const MultiRoundScheme&) const = default;
};

/// Wraps a one-round scheme.
MultiRoundScheme as_multiround(const TransmissionScheme& s);

/// Rounds needed: the network's solvability index. Throws NotSolvable.
std::size_t required_rounds(const DisseminationInstance& inst);

/// Round-by-round minimized schedule over r rounds. Throws InputError when
/// some node neither holds nor wants a symbol, NotSolvable when the network
/// is not strongly connected, RoundsTooFew when r is below the index,
/// InfeasibleInstance when a symbol has no holder.
MultiRoundScheme schedule(const DisseminationInstance& inst, std::size_t r,
                          const RoundOptions& opts = {});

struct Ratio {
  std::size_t num = 0;
  std::size_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Ratio&) const = default;
};

/// tau_total / dmax, reduced. Throws DivisionByZero when dmax is 0.
Ratio ratio(std::size_t tau_total, std::size_t dmax);
Ratio ratio(const DisseminationInstance& inst, std::size_t r, const RoundOptions& opts = {});

}  // namespace dissem
