#include "multiplex/couplings.hpp"

#include <algorithm>
#include <stdexcept>

namespace multiplex {

CouplingMatrices compute_couplings(const BlockingAssignment& blocking, const BlockModel& model,
                                   CouplingWeighting weighting) {
  const Index n = blocking.n;
  const Index k = model.K;
  if (model.hard_assignment.size() != static_cast<size_t>(blocking.block_count)) {
    throw std::invalid_argument("model has no hard assignment for this blocking");
  }

  // membership(i, c): node i's weight in cluster c (indicator when hard)
  Matrix membership = Matrix::Zero(n, k);
  for (Index i = 0; i < n; ++i) {
    const Index block = blocking.block_of[i];
    if (weighting == CouplingWeighting::hard) {
      membership(i, model.hard_assignment[block]) = 1.0;
    } else {
      membership.row(i) = model.responsibilities.row(block);
    }
  }

  CouplingMatrices result;
  result.P = membership * model.theta;
  result.Q = membership * model.delta;
  result.D = membership.colwise().sum().transpose();  // n*omega recomputed from the assignment

  result.Phi = model.theta * membership;  // K x K, column q still scaled by cluster mass
  result.Psi = model.delta * membership;
  for (Index c = 0; c < k; ++c) {
    if (result.D[c] <= 0.0) {
      result.Phi.col(c).setZero();
      result.Psi.col(c).setZero();
      result.empty_clusters.push_back(static_cast<int>(c));
      continue;
    }
    result.Phi.col(c) /= result.D[c];
    result.Psi.col(c) /= result.D[c];
  }
  return result;
}

namespace {

std::string label_or_id(const std::vector<std::string>& labels, Index id) {
  if (static_cast<size_t>(id) < labels.size() && !labels[id].empty()) return labels[id];
  return std::to_string(id);
}

void sort_rules(std::vector<AssociationRule>& rules) {
  std::stable_sort(rules.begin(), rules.end(), [](const AssociationRule& a, const AssociationRule& b) {
    if (a.strength != b.strength) return a.strength > b.strength;
    return a.consequent < b.consequent;
  });
}

}  // namespace

std::vector<AssociationRule> node_rules(const CouplingMatrices& couplings, Index node, int top,
                                        const std::vector<std::string>& labels) {
  const Index n = couplings.P.rows();
  if (node < 0 || node >= n) throw std::invalid_argument("node id out of range");
  std::vector<AssociationRule> rules;
  rules.reserve(n > 0 ? n - 1 : 0);
  for (Index j = 0; j < n; ++j) {
    if (j == node) continue;
    AssociationRule rule;
    rule.kind = AssociationRule::Kind::node;
    rule.antecedent = node;
    rule.consequent = j;
    rule.strength = couplings.P(node, j);
    rule.antecedent_label = label_or_id(labels, node);
    rule.consequent_label = label_or_id(labels, j);
    rules.push_back(std::move(rule));
  }
  sort_rules(rules);
  if (top >= 0 && static_cast<size_t>(top) < rules.size()) rules.resize(top);
  return rules;
}

std::vector<AssociationRule> block_rules(const CouplingMatrices& couplings, Index block) {
  const Index k = couplings.Phi.rows();
  if (block < 0 || block >= k) throw std::invalid_argument("block id out of range");
  std::vector<AssociationRule> rules;
  rules.reserve(k);
  for (Index q = 0; q < k; ++q) {
    AssociationRule rule;
    rule.kind = AssociationRule::Kind::block;
    rule.antecedent = block;
    rule.consequent = q;
    rule.strength = couplings.Phi(block, q);
    rules.push_back(std::move(rule));
  }
  sort_rules(rules);
  return rules;
}

}  // namespace multiplex
