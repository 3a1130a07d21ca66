#pragma once

#include "multiplex/graph_io.hpp"
#include "multiplex/hierarchy.hpp"
#include "multiplex/patterns.hpp"

#include <set>
#include <string>
#include <vector>

namespace multiplex {

/// Reproducible end-to-end configuration for the analyze/rules commands.
/// e_step_mode: "exact" or "sampled" force one mode everywhere; "auto" uses
/// the exact step on layer 1 and the sampled step on upper layers.
struct RunConfig {
  std::string input_path;
  InputFormat input_format = InputFormat::edgelist;
  bool directed = false;
  std::uint64_t seed = 1;
  int restarts = 8;
  double tolerance = 1e-6;
  int max_iterations = 500;
  double epsilon = 1e-6;
  int patience = 3;
  int hub_min = 2;
  int max_layers = 10;
  std::string e_step_mode = "auto";
  std::string output_dir = ".";
  std::set<std::string> emit = {"report_json", "trace_csv", "dot", "rules_csv", "matrix_pgm"};

  void validate() const;
  HierarchyConfig hierarchy_config() const;
};

struct LayerAnalysis {
  HierarchyLayer layer;
  ThresholdInfo threshold;
  ReducedBlockGraph reduced;
  PatternReservoirs patterns;
};

struct AnalysisResult {
  NetworkSpec network;
  RunConfig config;
  std::vector<LayerAnalysis> layers;
  bool converged = false;
  std::vector<std::string> warnings;
};

/// Full pipeline: ingest, build the hierarchy, derive couplings, reduce and
/// match patterns on every layer.
AnalysisResult run_analyze(const RunConfig& config);

/// Same pipeline on an already-parsed network (tests and generate+analyze flows).
AnalysisResult analyze_network(NetworkSpec network, const RunConfig& config);

struct RulesListing {
  Index node = 0;
  std::string label;
  Index block = 0;
  std::vector<AssociationRule> node_rules;
  std::vector<AssociationRule> block_rules;
};

/// Raised when --item matches no node label; carries nearby labels for the
/// error message.
class UnknownItemError : public std::runtime_error {
 public:
  UnknownItemError(std::string message, std::vector<std::string> candidates)
      : std::runtime_error(std::move(message)), candidates_(std::move(candidates)) {}
  const std::vector<std::string>& candidates() const { return candidates_; }

 private:
  std::vector<std::string> candidates_;
};

/// Fits the g = 1 layer and lists the item's node rules plus its block's
/// rules, both strength-sorted.
RulesListing run_rules(const RunConfig& config, const std::string& item, int top);

}  // namespace multiplex
