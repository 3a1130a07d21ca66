#pragma once

#include "multiplex/couplings.hpp"
#include "multiplex/model_selection.hpp"

#include <vector>

namespace multiplex {

/// One layer of the nested organization: a blocking, the model selected for
/// it, the selection trace, and the derived coupling matrices.
struct HierarchyLayer {
  int layer_index = 1;  // 1-based; layer 1 has g = 1
  BlockingAssignment blocking;
  BlockModel model;
  SelectionTrace trace;
  CouplingMatrices couplings;
};

struct Hierarchy {
  std::vector<HierarchyLayer> layers;
  bool converged = false;  // cluster count reached a fixed point
};

struct HierarchyConfig {
  EMConfig em;
  int patience = 3;
  int max_layers = 10;
  // Upper layers default to the sampled E step, the O(I L n K) variant; exact
  // mode is the deterministic desk-scale override.
  EStepMode upper_layer_mode = EStepMode::sampled;
};

/// Capsules the clusters of `layer` into the blocks of the next layer:
/// nodes sharing a cluster share a block. Cluster ids unused by the hard
/// assignment are squeezed out so block ids stay dense.
BlockingAssignment capsule_clusters(const HierarchyLayer& layer);

/// Builds the nested multilayer organization: layer 1 is selected at g = 1,
/// each following layer capsules the previous layer's clusters, and the
/// recursion stops when the cluster count stops shrinking (the redundant
/// confirming layer is not stored) or max_layers is reached.
Hierarchy build_hierarchy(const Matrix& adjacency, const HierarchyConfig& config);

}  // namespace multiplex
