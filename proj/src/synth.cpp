#include "multiplex/synth.hpp"

#include "multiplex/rng.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace multiplex {

void PlantedSpec::validate() const {
  const Index k = static_cast<Index>(block_sizes.size());
  if (k == 0) throw std::invalid_argument("block_sizes must be non-empty");
  for (Index size : block_sizes) {
    if (size <= 0) throw std::invalid_argument("block sizes must be positive");
  }
  if (coupling_plan.rows() != k || coupling_plan.cols() != k) {
    throw std::invalid_argument("coupling_plan must be K x K for K block sizes");
  }
  for (Index p = 0; p < k; ++p) {
    for (Index q = 0; q < k; ++q) {
      const double prob = coupling_plan(p, q);
      if (!(prob >= 0.0 && prob <= 1.0)) {
        throw std::invalid_argument("coupling probabilities must lie in [0, 1]");
      }
      if (!directed && coupling_plan(p, q) != coupling_plan(q, p)) {
        throw std::invalid_argument("undirected plans must be symmetric");
      }
    }
  }
}

std::pair<NetworkSpec, BlockingAssignment> generate(const PlantedSpec& spec) {
  spec.validate();
  const Index n = std::accumulate(spec.block_sizes.begin(), spec.block_sizes.end(), Index{0});

  std::vector<Index> block_of(n);
  Index node = 0;
  for (size_t block = 0; block < spec.block_sizes.size(); ++block) {
    for (Index i = 0; i < spec.block_sizes[block]; ++i) block_of[node++] = static_cast<Index>(block);
  }

  NetworkSpec network;
  network.node_count = n;
  network.directed = spec.directed;
  network.node_labels.reserve(n);
  for (Index v = 0; v < n; ++v) network.node_labels.push_back(std::to_string(v));

  Rng rng(spec.seed);
  for (Index i = 0; i < n; ++i) {
    for (Index j = spec.directed ? 0 : i + 1; j < n; ++j) {
      if (i == j) continue;
      if (rng.uniform() < spec.coupling_plan(block_of[i], block_of[j])) {
        network.arcs.emplace_back(i, j);
        if (!spec.directed) network.arcs.emplace_back(j, i);
      }
    }
  }
  std::sort(network.arcs.begin(), network.arcs.end());

  return {std::move(network), blocking_from_map(std::move(block_of))};
}

}  // namespace multiplex
