#pragma once

#include "multiplex/block_model.hpp"
#include "multiplex/rng.hpp"

#include <string>
#include <vector>

namespace test_support {

using namespace multiplex;

inline Matrix random_adjacency(Rng& rng, Index n, double p, bool symmetric = false) {
  Matrix a = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = symmetric ? i + 1 : 0; j < n; ++j) {
      if (i == j) continue;
      if (rng.uniform() < p) {
        a(i, j) = 1.0;
        if (symmetric) a(j, i) = 1.0;
      }
    }
  }
  return a;
}

/// Random surjective blocking: the first L nodes pin one block each, the rest
/// fall uniformly.
inline BlockingAssignment random_blocking(Rng& rng, Index n, Index blocks) {
  std::vector<Index> map(n);
  for (Index i = 0; i < blocks; ++i) map[i] = i;
  for (Index i = blocks; i < n; ++i) map[i] = static_cast<Index>(rng.below(blocks));
  return blocking_from_map(std::move(map));
}

/// Valid model with interior parameters (no clamping surprises).
inline BlockModel random_model(Rng& rng, Index n, int k) {
  BlockModel m;
  m.K = k;
  m.theta.resize(k, n);
  m.delta.resize(k, n);
  for (Index r = 0; r < k; ++r) {
    for (Index c = 0; c < n; ++c) {
      m.theta(r, c) = 0.05 + 0.9 * rng.uniform();
      m.delta(r, c) = 0.05 + 0.9 * rng.uniform();
    }
  }
  m.omega = simplex_row(rng, k);
  return m;
}

inline Matrix random_responsibilities(Rng& rng, Index blocks, int k) {
  Matrix gamma(blocks, k);
  for (Index l = 0; l < blocks; ++l) gamma.row(l) = simplex_row(rng, k).transpose();
  return gamma;
}

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

CommandResult run_cli(const std::string& args);

}  // namespace test_support
