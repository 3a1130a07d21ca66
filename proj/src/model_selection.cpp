#include "multiplex/model_selection.hpp"

#include <cmath>
#include <stdexcept>

namespace multiplex {

double penalty(int cluster_count, double granularity) {
  if (cluster_count < 1) throw std::invalid_argument("cluster count must be >= 1");
  if (!(granularity > 0.0)) throw std::invalid_argument("granularity must be positive");
  const double k2 = static_cast<double>(cluster_count) * static_cast<double>(cluster_count);
  return 2.0 * granularity * k2 * std::log(k2);
}

SelectionResult select_model(const Matrix& adjacency, const BlockingAssignment& blocking,
                             const EMConfig& config, int patience) {
  if (patience < 1) throw std::invalid_argument("patience must be >= 1");

  SelectionResult result;
  double best_cost = 0.0;
  int rising = 0;  // consecutive entries costing more than the incumbent

  for (int k = 1; k <= blocking.block_count; ++k) {
    BlockModel model = fit(adjacency, blocking, k, config);
    SelectionEntry entry;
    entry.K = k;
    entry.neg_log_likelihood = -model.log_likelihood;
    entry.penalty = penalty(k, blocking.granularity());
    entry.total_cost = entry.neg_log_likelihood + entry.penalty;
    result.trace.entries.push_back(entry);

    if (result.trace.chosen_K == 0 || entry.total_cost < best_cost) {
      best_cost = entry.total_cost;
      result.trace.chosen_K = k;
      result.model = std::move(model);
      rising = 0;
    } else if (entry.total_cost > best_cost) {
      if (++rising >= patience && k < blocking.block_count) {
        result.trace.stopped_early = true;
        break;
      }
    } else {
      rising = 0;  // tied the incumbent; not evidence the well has been passed
    }
  }
  return result;
}

}  // namespace multiplex
