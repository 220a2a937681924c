#pragma once
// Random instances with a prescribed solvability index.

#include <cstdint>
#include <vector>

#include "dissem/instance.hpp"
#include "dissem/rng.hpp"

namespace dissem {

struct GenParams {
  std::size_t nodes = 4;
  std::size_t symbols = 4;
  std::size_t diameter = 2;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  std::uint32_t field = 2;
  std::size_t retry_budget = 10'000;
};

/// Random spanning cycle plus random extra edges, kept once its solvability
/// index equals `diameter`. Throws GenerationFailed after the retry budget.
DirectedNetwork random_network(std::size_t nodes, std::size_t diameter, Rng& rng,
                               std::size_t retry_budget = 10'000);

/// Each symbol goes to a uniform random nonempty node subset; every node
/// requests what it lacks. Instances where nobody lacks anything are redrawn.
DisseminationInstance random_instance(const GenParams& p, Rng& rng);

/// `count` instances, identical for identical parameters.
std::vector<DisseminationInstance> generate_corpus(const GenParams& p);

}  // namespace dissem
