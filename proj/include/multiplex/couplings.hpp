#pragma once

#include "multiplex/block_model.hpp"

#include <string>
#include <vector>

namespace multiplex {

/// Node couplings P, Q (n x n) and block couplings Phi, Psi (K x K) derived
/// from a fitted layer. Row i of P equals the theta row of node i's cluster;
/// phi_pq is the mean of theta row p over cluster q's nodes.
struct CouplingMatrices {
  Matrix P;    // node feedforward couplings
  Matrix Q;    // node feedback couplings
  Matrix Phi;  // block feedforward couplings
  Matrix Psi;  // block feedback couplings
  Vector D;    // cluster sizes n*omega, the averaging weights
  std::vector<int> empty_clusters;
};

enum class CouplingWeighting {
  hard,  // argmax assignment, the counting derivation
  soft   // responsibilities-weighted; diagnostics only
};

CouplingMatrices compute_couplings(const BlockingAssignment& blocking, const BlockModel& model,
                                   CouplingWeighting weighting = CouplingWeighting::hard);

struct AssociationRule {
  enum class Kind { node, block };
  Kind kind = Kind::node;
  Index antecedent = 0;
  Index consequent = 0;
  double strength = 0.0;
  std::string antecedent_label;
  std::string consequent_label;
};

/// Rules i -> j for j != i, strength-sorted descending, ties by id ascending,
/// truncated to `top` entries.
std::vector<AssociationRule> node_rules(const CouplingMatrices& couplings, Index node, int top,
                                        const std::vector<std::string>& labels = {});

/// Rules p -> q for every block q including q = p, strength-sorted.
std::vector<AssociationRule> block_rules(const CouplingMatrices& couplings, Index block);

}  // namespace multiplex
