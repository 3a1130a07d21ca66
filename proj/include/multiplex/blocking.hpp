#pragma once

#include "multiplex/types.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>

namespace multiplex {

/// Partition of the n nodes into L non-empty blocks with dense ids.
/// Granularity g = n/L; g = 1 means every node is its own block.
struct BlockingAssignment {
  Index n = 0;
  Index block_count = 0;                    // L
  std::vector<Index> block_of;              // node -> block id
  std::vector<std::vector<Index>> members;  // block id -> sorted node ids

  double granularity() const { return static_cast<double>(n) / static_cast<double>(block_count); }

  Index block_size(Index block) const { return static_cast<Index>(members[block].size()); }
};

/// Builds a validated blocking from a node -> block map. Block ids must be
/// dense in [0, L) with every block non-empty.
inline BlockingAssignment blocking_from_map(std::vector<Index> block_of) {
  BlockingAssignment b;
  b.n = static_cast<Index>(block_of.size());
  if (b.n == 0) throw std::invalid_argument("blocking needs at least one node");
  Index max_id = -1;
  for (Index id : block_of) {
    if (id < 0) throw std::invalid_argument("negative block id");
    max_id = std::max(max_id, id);
  }
  b.block_count = max_id + 1;
  b.members.resize(b.block_count);
  for (Index node = 0; node < b.n; ++node) b.members[block_of[node]].push_back(node);
  for (Index block = 0; block < b.block_count; ++block) {
    if (b.members[block].empty()) {
      throw std::invalid_argument("block " + std::to_string(block) + " is empty");
    }
  }
  b.block_of = std::move(block_of);
  return b;
}

/// The finest blocking: each node its own block (g = 1).
inline BlockingAssignment identity_blocking(Index n) {
  std::vector<Index> map(n);
  std::iota(map.begin(), map.end(), Index{0});
  return blocking_from_map(std::move(map));
}

}  // namespace multiplex
