#pragma once

#include "multiplex/blocking.hpp"
#include "multiplex/rng.hpp"
#include "multiplex/types.hpp"

#include <cstdint>
#include <vector>

namespace multiplex {

enum class EStepMode { exact, sampled };

struct EMConfig {
  int max_iterations = 500;
  double tolerance = 1e-6;  // absolute log-likelihood change at convergence
  int restarts = 8;
  std::uint64_t seed = 1;
  double epsilon = 1e-6;  // clamp for theta/delta entries
  EStepMode e_step_mode = EStepMode::exact;

  void validate() const;
};

struct FitDiagnostics {
  std::vector<double> likelihood_trace;  // one entry per EM iteration
  int restart_index = -1;                // which restart produced the model
  bool empty_cluster_seen = false;
};

/// Fitted model X = (K, Z, Theta, Delta, Omega) for a given blocking, together
/// with the responsibilities the EM run converged to.
struct BlockModel {
  int K = 0;
  Matrix responsibilities;           // L x K, rows sum to 1
  std::vector<Index> hard_assignment;  // block -> cluster, row-wise argmax
  Matrix theta;                      // K x n, feedforward couplings per cluster
  Matrix delta;                      // K x n, feedback couplings per cluster
  Vector omega;                      // K cluster priors
  double log_likelihood = 0.0;
  int em_iterations = 0;
  FitDiagnostics diagnostics;
};

/// Per-node, per-cluster log joint scores
///   s_ik = sum_j [ a_ij ln th_kj + (1-a_ij) ln(1-th_kj)
///                + a_ji ln de_kj + (1-a_ji) ln(1-de_kj) ] + ln om_k
/// assembled from two matrix products; the j = i term contributes
/// ln(1-th_ki) + ln(1-de_ki) since the diagonal of A is zero.
template <class DA, class DT, class DD, class DO>
Matrix log_joint_scores(const Eigen::MatrixBase<DA>& adjacency, const Eigen::MatrixBase<DT>& theta,
                        const Eigen::MatrixBase<DD>& delta, const Eigen::MatrixBase<DO>& omega) {
  const Matrix log_theta = theta.array().log();
  const Matrix log_1m_theta = (1.0 - theta.array()).log();
  const Matrix log_delta = delta.array().log();
  const Matrix log_1m_delta = (1.0 - delta.array()).log();

  // constant-in-i part: sum_j ln(1-th_kj) + sum_j ln(1-de_kj) + ln om_k
  Vector base = log_1m_theta.rowwise().sum() + log_1m_delta.rowwise().sum() +
                omega.array().log().matrix();

  Matrix scores = adjacency * (log_theta - log_1m_theta).transpose() +
                  adjacency.transpose() * (log_delta - log_1m_delta).transpose();
  scores.rowwise() += base.transpose();
  return scores;
}

/// log(sum_k exp(row_k)) with the usual max shift; tolerates -inf entries.
double log_sum_exp(const Eigen::Ref<const Vector>& values);

/// Log-likelihood of the network under (B, M): per-node log-sum-exp of the
/// joint scores, summed over all nodes.
double log_likelihood(const Matrix& adjacency, const BlockingAssignment& blocking,
                      const BlockModel& model);

/// Exact responsibilities: row l of the result averages the per-node cluster
/// posteriors over block l's members.
Matrix e_step(const Matrix& adjacency, const BlockingAssignment& blocking, const BlockModel& model);

/// Approximate responsibilities: one uniformly drawn representative node per
/// block stands in for the block average. Identical to the exact step when
/// every block is a singleton.
Matrix e_step_sampled(const Matrix& adjacency, const BlockingAssignment& blocking,
                      const BlockModel& model, Rng& rng);

struct MStepResult {
  Matrix theta;  // K x n
  Matrix delta;  // K x n
  Vector omega;  // K
  std::vector<int> empty_clusters;
};

/// Maximizing parameter update:
///   th_kj = sum_i r_ik a_ij / sum_i r_ik,  de_kj likewise with a_ji,
///   om_k = sum_i r_ik / n,
/// where r_ik is node i's block responsibility. theta/delta are clamped into
/// [epsilon, 1-epsilon]; a cluster with zero responsibility mass gets uniform
/// 0.5 rows and om_k = 0 and is reported in empty_clusters.
MStepResult m_step(const Matrix& adjacency, const BlockingAssignment& blocking,
                   const Matrix& responsibilities, double epsilon);

/// Alternates e/m steps from a random row-stochastic start until the absolute
/// log-likelihood change drops below tolerance, repeated over seeded restarts;
/// returns the best local optimum found.
BlockModel fit(const Matrix& adjacency, const BlockingAssignment& blocking, int cluster_count,
               const EMConfig& config);

}  // namespace multiplex
