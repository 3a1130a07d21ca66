#pragma once

#include "multiplex/blocking.hpp"
#include "multiplex/graph_io.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace multiplex {

/// Seeded generator recipe: block sizes plus a K x K arc-probability plan.
struct PlantedSpec {
  std::vector<Index> block_sizes;
  Matrix coupling_plan;  // plan(p, q): probability of an arc from block p to block q
  bool directed = true;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Draws each ordered node pair (i, j), i != j, with probability
/// plan[block(i)][block(j)]; undirected mode draws once per unordered pair.
/// The same seed yields a byte-identical NetworkSpec.
std::pair<NetworkSpec, BlockingAssignment> generate(const PlantedSpec& spec);

}  // namespace multiplex
