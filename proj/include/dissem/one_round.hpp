#pragma once
// One-round optimal coded broadcast.
//
// Each node l picks a matrix A_l whose rows are supported on the symbols it
// holds and broadcasts a basis of rowspace(A_l) to its out-neighbors. A choice
// is valid when every requester can write each requested unit vector as a
// combination of the rows it hears plus its own side information. The optimum
// minimizes the summed ranks.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dissem/field.hpp"
#include "dissem/instance.hpp"

namespace dissem {

/// Coding vectors (rows, in symbol coordinates) broadcast by each node in one round.
struct TransmissionScheme {
  std::uint32_t q = 2;
  std::size_t n = 0;
  std::vector<FieldMatrix> per_node;

  std::size_t transmissions() const;
  bool operator==(const TransmissionScheme&) const = default;
};

enum class SolveMethod { exact, heuristic };

struct OneRoundResult {
  std::size_t tau = 0;
  TransmissionScheme scheme;
  SolveMethod method = SolveMethod::exact;
  std::vector<std::size_t> ranks;   // per node
  std::uint64_t explored = 0;       // search nodes (exact) or restarts (heuristic)
};

struct ExactCaps {
  std::uint32_t max_field = 2;
  /// Only nodes that hold something and reach a requester are searched.
  std::size_t max_possession = 5;
  std::size_t max_senders = 6;
  /// Search nodes expanded before SearchCapExceeded.
  std::uint64_t node_budget = 50'000'000;
  /// Optional per-node transmission limit; the family itself allows up to n.
  std::optional<std::size_t> per_node_limit;
};

/// Requests (node, symbol) that the choice leaves undecodable.
std::vector<std::pair<std::size_t, std::size_t>> unsatisfied_requests(
    const DisseminationInstance& inst, std::span<const FieldMatrix> choice);

/// True iff every requested unit vector lies in the span of the rows the
/// requester hears plus its side information. Throws InputError when a row
/// uses a symbol its node does not hold.
bool check_condition(const DisseminationInstance& inst, std::span<const FieldMatrix> choice);

/// Flooding choice: every node sends each symbol it holds.
std::vector<FieldMatrix> flooding_choice(const DisseminationInstance& inst);

/// Exact minimum by subspace enumeration with iterative deepening on the total
/// rank. Among optimal choices the first in node order, each node's subspaces
/// taken by ascending dimension then lexicographic RREF, is returned.
/// Throws NotOneRoundSolvable or SearchCapExceeded.
OneRoundResult solve_exact(const DisseminationInstance& inst, const ExactCaps& caps = {});

/// Random-basis greedy row deletion from flooding, best of `iterations`
/// restarts. Deterministic for a given seed. Throws NotOneRoundSolvable.
OneRoundResult solve_heuristic(const DisseminationInstance& inst, std::uint64_t seed,
                               std::size_t iterations = 64);

struct ReceivedRow {
  std::size_t sender;
  std::size_t index;  // row within the sender's matrix
};

/// The rows `node` hears, in-neighbors ascending, each sender's rows in order.
std::pair<FieldMatrix, std::vector<ReceivedRow>> received_rows(const DisseminationInstance& inst,
                                                               const TransmissionScheme& scheme,
                                                               std::size_t node);

struct Decoding {
  std::vector<ReceivedRow> received;
  FieldVector alpha;  // one coefficient per received row
  FieldVector beta;   // one coefficient per row of P_l (length n)
};

/// Coefficients with sum(alpha * received) + sum(beta * P_l rows) = e_symbol.
/// Throws NoDecoding when the symbol is not recoverable.
Decoding decode(const DisseminationInstance& inst, const TransmissionScheme& scheme,
                std::size_t node, std::size_t symbol);

/// All subspaces of span{e_j : j in coords} of dimension <= max_dim, as RREF
/// bases, grouped by dimension; each group sorted lexicographically.
std::vector<std::vector<FieldMatrix>> enumerate_subspaces(std::uint32_t q, std::size_t n,
                                                          SymbolSet coords, std::size_t max_dim);

}  // namespace dissem
