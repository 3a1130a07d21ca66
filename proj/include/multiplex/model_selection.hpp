#pragma once

#include "multiplex/block_model.hpp"

#include <vector>

namespace multiplex {

struct SelectionEntry {
  int K = 0;
  double neg_log_likelihood = 0.0;
  double penalty = 0.0;
  double total_cost = 0.0;
};

struct SelectionTrace {
  std::vector<SelectionEntry> entries;
  int chosen_K = 0;
  bool stopped_early = false;
};

/// Coding-length penalty 2 g K^2 ln(K^2). The 2n ln(2n) part of the full
/// coding length is constant in K and therefore omitted.
double penalty(int cluster_count, double granularity);

struct SelectionResult {
  BlockModel model;
  SelectionTrace trace;
};

/// Scans K = 1, 2, ..., L in order, fitting at each K and recording
/// total_cost = -log_likelihood + penalty. The scan stops once the cost has
/// exceeded the incumbent minimum for `patience` consecutive K values (or at
/// K = L) and returns the incumbent model with the full trace.
SelectionResult select_model(const Matrix& adjacency, const BlockingAssignment& blocking,
                             const EMConfig& config, int patience);

}  // namespace multiplex
