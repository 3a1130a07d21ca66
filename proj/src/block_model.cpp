#include "multiplex/block_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace multiplex {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_dimensions(const Matrix& adjacency, const BlockingAssignment& blocking,
                      const BlockModel& model) {
  const Index n = adjacency.rows();
  if (adjacency.cols() != n) throw std::invalid_argument("adjacency must be square");
  if (blocking.n != n) throw std::invalid_argument("blocking covers a different node count");
  if (model.theta.rows() != model.K || model.theta.cols() != n ||
      model.delta.rows() != model.K || model.delta.cols() != n ||
      model.omega.size() != model.K) {
    throw std::invalid_argument("model dimensions disagree with the network");
  }
}

// Normalizes one score row into a posterior over clusters. An all -inf row
// (possible only with unclamped degenerate parameters) falls back to uniform
// so the step never emits NaN.
void posterior_from_scores(const Eigen::Ref<const Vector>& scores, Eigen::Ref<Vector> out) {
  const Index k = scores.size();
  double max = scores.maxCoeff();
  if (!std::isfinite(max)) {
    out.setConstant(1.0 / static_cast<double>(k));
    return;
  }
  out = (scores.array() - max).exp();
  out /= out.sum();
}

}  // namespace

void EMConfig::validate() const {
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw std::invalid_argument("epsilon must lie in (0, 0.5)");
}

double log_sum_exp(const Eigen::Ref<const Vector>& values) {
  double max = values.maxCoeff();
  if (!std::isfinite(max)) return max;  // all -inf
  return max + std::log((values.array() - max).exp().sum());
}

double log_likelihood(const Matrix& adjacency, const BlockingAssignment& blocking,
                      const BlockModel& model) {
  check_dimensions(adjacency, blocking, model);
  const Matrix scores = log_joint_scores(adjacency, model.theta, model.delta, model.omega);
  double total = 0.0;
  for (Index i = 0; i < scores.rows(); ++i) {
    total += log_sum_exp(scores.row(i).transpose());
  }
  return total;
}

Matrix e_step(const Matrix& adjacency, const BlockingAssignment& blocking, const BlockModel& model) {
  check_dimensions(adjacency, blocking, model);
  const Matrix scores = log_joint_scores(adjacency, model.theta, model.delta, model.omega);
  Matrix gamma = Matrix::Zero(blocking.block_count, model.K);
  Vector posterior(model.K);
  for (Index i = 0; i < blocking.n; ++i) {
    posterior_from_scores(scores.row(i).transpose(), posterior);
    gamma.row(blocking.block_of[i]) += posterior.transpose();
  }
  for (Index l = 0; l < blocking.block_count; ++l) {
    gamma.row(l) /= static_cast<double>(blocking.block_size(l));
  }
  return gamma;
}

Matrix e_step_sampled(const Matrix& adjacency, const BlockingAssignment& blocking,
                      const BlockModel& model, Rng& rng) {
  check_dimensions(adjacency, blocking, model);
  const Matrix scores = log_joint_scores(adjacency, model.theta, model.delta, model.omega);
  Matrix gamma(blocking.block_count, model.K);
  Vector posterior(model.K);
  for (Index l = 0; l < blocking.block_count; ++l) {
    const auto& members = blocking.members[l];
    const Index pick = members[rng.below(members.size())];
    posterior_from_scores(scores.row(pick).transpose(), posterior);
    gamma.row(l) = posterior.transpose();
  }
  return gamma;
}

MStepResult m_step(const Matrix& adjacency, const BlockingAssignment& blocking,
                   const Matrix& responsibilities, double epsilon) {
  const Index n = adjacency.rows();
  const Index k = responsibilities.cols();
  if (responsibilities.rows() != blocking.block_count) {
    throw std::invalid_argument("responsibilities row count must equal the block count");
  }

  // spread block responsibilities onto nodes
  Matrix node_resp(n, k);
  for (Index i = 0; i < n; ++i) node_resp.row(i) = responsibilities.row(blocking.block_of[i]);

  const Vector mass = node_resp.colwise().sum().transpose();
  MStepResult result;
  result.theta = node_resp.transpose() * adjacency;              // K x n, weighted in-arcs
  result.delta = node_resp.transpose() * adjacency.transpose();  // K x n, weighted out-arcs
  result.omega = mass / static_cast<double>(n);

  const double low = epsilon, high = 1.0 - epsilon;
  for (Index c = 0; c < k; ++c) {
    if (mass[c] <= 0.0) {
      result.theta.row(c).setConstant(0.5);
      result.delta.row(c).setConstant(0.5);
      result.omega[c] = 0.0;
      result.empty_clusters.push_back(static_cast<int>(c));
      continue;
    }
    result.theta.row(c) /= mass[c];
    result.delta.row(c) /= mass[c];
  }
  result.theta = result.theta.array().min(high).max(low);
  result.delta = result.delta.array().min(high).max(low);
  return result;
}

BlockModel fit(const Matrix& adjacency, const BlockingAssignment& blocking, int cluster_count,
               const EMConfig& config) {
  config.validate();
  if (cluster_count < 1 || cluster_count > blocking.block_count) {
    throw std::invalid_argument("cluster count must lie in [1, L]");
  }

  BlockModel best;
  bool have_best = false;

  for (int restart = 0; restart < config.restarts; ++restart) {
    Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(restart)));

    Matrix gamma(blocking.block_count, cluster_count);
    for (Index l = 0; l < blocking.block_count; ++l) {
      gamma.row(l) = simplex_row(rng, cluster_count).transpose();
    }

    BlockModel model;
    model.K = cluster_count;
    model.diagnostics.restart_index = restart;
    double previous = kNegInf;

    for (int iteration = 1; iteration <= config.max_iterations; ++iteration) {
      MStepResult params = m_step(adjacency, blocking, gamma, config.epsilon);
      model.theta = std::move(params.theta);
      model.delta = std::move(params.delta);
      model.omega = std::move(params.omega);
      if (!params.empty_clusters.empty()) model.diagnostics.empty_cluster_seen = true;

      const double current = log_likelihood(adjacency, blocking, model);
      model.diagnostics.likelihood_trace.push_back(current);
      model.log_likelihood = current;
      model.em_iterations = iteration;

      gamma = config.e_step_mode == EStepMode::exact
                  ? e_step(adjacency, blocking, model)
                  : e_step_sampled(adjacency, blocking, model, rng);

      if (std::abs(current - previous) < config.tolerance) break;
      previous = current;
    }

    model.responsibilities = std::move(gamma);
    if (!have_best || model.log_likelihood > best.log_likelihood) {
      best = std::move(model);
      have_best = true;
    }
  }

  best.hard_assignment.resize(blocking.block_count);
  for (Index l = 0; l < blocking.block_count; ++l) {
    Index arg = 0;  // ties break toward the lowest cluster id
    for (Index c = 1; c < cluster_count; ++c) {
      if (best.responsibilities(l, c) > best.responsibilities(l, arg)) arg = c;
    }
    best.hard_assignment[l] = arg;
  }
  return best;
}

}  // namespace multiplex
