#include "multiplex/hierarchy.hpp"

#include <algorithm>
#include <stdexcept>

namespace multiplex {

BlockingAssignment capsule_clusters(const HierarchyLayer& layer) {
  const auto& blocking = layer.blocking;
  const auto& hard = layer.model.hard_assignment;

  std::vector<Index> dense(layer.model.K, -1);
  Index next = 0;
  for (Index block = 0; block < blocking.block_count; ++block) {
    Index& id = dense[hard[block]];
    if (id < 0) id = next++;
  }
  // renumber in ascending cluster-id order so the mapping is reproducible
  std::vector<Index> order;
  for (Index c = 0; c < layer.model.K; ++c) {
    if (dense[c] >= 0) order.push_back(c);
  }
  for (size_t rank = 0; rank < order.size(); ++rank) dense[order[rank]] = static_cast<Index>(rank);

  std::vector<Index> block_of(blocking.n);
  for (Index node = 0; node < blocking.n; ++node) {
    block_of[node] = dense[hard[blocking.block_of[node]]];
  }
  return blocking_from_map(std::move(block_of));
}

Hierarchy build_hierarchy(const Matrix& adjacency, const HierarchyConfig& config) {
  if (config.max_layers < 1) throw std::invalid_argument("max_layers must be >= 1");
  config.em.validate();

  Hierarchy hierarchy;
  BlockingAssignment blocking = identity_blocking(adjacency.rows());
  EMConfig em = config.em;

  for (int depth = 1; depth <= config.max_layers; ++depth) {
    SelectionResult selected = select_model(adjacency, blocking, em, config.patience);

    if (depth > 1 && selected.model.K == hierarchy.layers.back().model.K) {
      hierarchy.converged = true;  // fixed point confirmed; drop the redundant layer
      break;
    }

    HierarchyLayer layer;
    layer.layer_index = depth;
    layer.blocking = std::move(blocking);
    layer.model = std::move(selected.model);
    layer.trace = std::move(selected.trace);
    layer.couplings = compute_couplings(layer.blocking, layer.model);
    hierarchy.layers.push_back(std::move(layer));

    const HierarchyLayer& stored = hierarchy.layers.back();
    if (stored.model.K == 1) {
      hierarchy.converged = true;  // a single block cannot coarsen further
      break;
    }
    blocking = capsule_clusters(stored);
    em.e_step_mode = config.upper_layer_mode;
  }
  return hierarchy;
}

}  // namespace multiplex
