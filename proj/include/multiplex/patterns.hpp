#pragma once

#include "multiplex/couplings.hpp"
#include "multiplex/types.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace multiplex {

/// Grouping of the sorted Phi entries at remarkable gaps. The threshold is the
/// largest entry of the weakest group, so only couplings strictly above the
/// background survive reduction.
struct ThresholdInfo {
  double value = 0.0;
  std::vector<std::vector<double>> groups;  // contiguous groups, strongest first
  bool degenerate = false;
};

ThresholdInfo compute_threshold_info(const Matrix& phi);
double compute_threshold(const Matrix& phi);

/// Block-level directed graph keeping the arcs (p, q) with phi_pq above the
/// threshold.
struct ReducedBlockGraph {
  int block_count = 0;
  double threshold = 0.0;
  BoolArray arcs;  // K x K; arcs(p, q) iff phi_pq > threshold

  bool has_arc(Index p, Index q) const { return arcs(p, q); }
  bool self_coupled(Index p) const { return arcs(p, p); }
  std::vector<std::pair<int, int>> arc_list() const;
};

ReducedBlockGraph reduce(const CouplingMatrices& couplings,
                         std::optional<double> fixed_threshold = std::nullopt);

enum class PatternKind { community, authority, hub, outlier, bow_tie, bipartite, multipartite };

std::string to_string(PatternKind kind);
const std::vector<PatternKind>& all_pattern_kinds();

/// One recognized pattern. `blocks` is the sorted block set used for
/// subsumption; the remaining fields annotate roles (hub/authority spokes,
/// outlier witnesses, bow-tie wings).
struct PatternInstance {
  PatternKind kind = PatternKind::community;
  std::vector<int> blocks;
  int layer_index = 1;
  int core = -1;
  std::vector<int> spokes;
  std::vector<int> left, right;
};

/// Per-kind reservoirs, maximal under subsumption: no stored instance's block
/// set is a subset of another stored instance of the same kind.
class PatternReservoirs {
 public:
  /// Discards `instance` when an existing same-kind instance contains its
  /// block set; otherwise inserts it, evicting any instances it subsumes.
  bool insert(PatternInstance instance);

  const std::vector<PatternInstance>& of(PatternKind kind) const;
  size_t total() const;

  /// Orders every reservoir by block set for stable output.
  void sort();

 private:
  std::map<PatternKind, std::vector<PatternInstance>> by_kind_;
  static const std::vector<PatternInstance> empty_;
};

/// Recognizes the pattern vocabulary on a reduced blocking graph:
/// communities (self-coupled), hubs/authorities (self-coupled with at least
/// `hub_min` out-/in-neighbors), outliers (non-self-coupled, coupled by a hub
/// or coupling with an authority), bow ties, and bipartites/multipartites
/// (maximal reciprocally coupled sets of non-self-coupled blocks).
PatternReservoirs match_patterns(const ReducedBlockGraph& graph, int layer_index, int hub_min = 2);

}  // namespace multiplex
