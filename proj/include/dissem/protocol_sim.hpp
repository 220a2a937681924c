#pragma once
// Symbolic execution of a broadcast schedule.
//
// Symbols are never instantiated. A node's knowledge is the span of the unit
// vectors it starts with plus every coding vector it has heard, and a symbol
// is recoverable exactly when its unit vector lies in that span.

#include <optional>
#include <vector>

#include "dissem/instance.hpp"
#include "dissem/multiround.hpp"
#include "dissem/one_round.hpp"

namespace dissem {

struct Broadcast {
  std::size_t sender = 0;
  FieldVector vector;
  std::vector<std::size_t> receivers;  // out-neighbors of the sender
};

struct Recovery {
  std::size_t node = 0;
  std::size_t symbol = 0;
  bool satisfied = false;
  /// One coefficient per row of the node's log (initial unit vectors for its
  /// held symbols ascending, then received vectors in arrival order).
  std::optional<FieldVector> coefficients;
};

struct Transcript {
  std::uint32_t q = 2;
  std::size_t n = 0;
  std::vector<std::vector<Broadcast>> rounds;
  /// knowledge dimension of every node after each round; entry 0 is the start
  std::vector<std::vector<std::size_t>> dimensions;
  std::vector<FieldMatrix> logs;       // per node
  std::vector<FieldMatrix> knowledge;  // per node, RREF basis at the end
  std::vector<Recovery> recovery;

  bool all_satisfied() const;
  std::vector<std::pair<std::size_t, std::size_t>> unsatisfied() const;
};

/// Throws IllegalTransmission when a vector is outside its sender's knowledge
/// at the start of its round, InputError on shape mismatch.
Transcript execute(const DisseminationInstance& inst, const MultiRoundScheme& scheme);
Transcript execute(const DisseminationInstance& inst, const TransmissionScheme& scheme);

/// Every node rebroadcasts its whole knowledge basis each round.
Transcript flood_execute(const DisseminationInstance& inst, std::size_t rounds);

}  // namespace dissem
