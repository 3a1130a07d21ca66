#include "multiplex/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace multiplex {

namespace {

const std::set<std::string> kEmitNames = {"report_json", "trace_csv", "dot", "rules_csv",
                                          "matrix_pgm"};

EStepMode base_mode(const std::string& mode) {
  return mode == "sampled" ? EStepMode::sampled : EStepMode::exact;
}

EStepMode upper_mode(const std::string& mode) {
  return mode == "exact" ? EStepMode::exact : EStepMode::sampled;
}

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

void RunConfig::validate() const {
  hierarchy_config().em.validate();
  if (patience < 1) throw std::invalid_argument("patience must be >= 1");
  if (hub_min < 1) throw std::invalid_argument("hub_min must be >= 1");
  if (max_layers < 1) throw std::invalid_argument("max_layers must be >= 1");
  if (e_step_mode != "auto" && e_step_mode != "exact" && e_step_mode != "sampled") {
    throw std::invalid_argument("e_step_mode must be auto, exact or sampled");
  }
  for (const auto& name : emit) {
    if (!kEmitNames.count(name)) throw std::invalid_argument("unknown emit artifact '" + name + "'");
  }
}

HierarchyConfig RunConfig::hierarchy_config() const {
  HierarchyConfig hc;
  hc.em.max_iterations = max_iterations;
  hc.em.tolerance = tolerance;
  hc.em.restarts = restarts;
  hc.em.seed = seed;
  hc.em.epsilon = epsilon;
  hc.em.e_step_mode = base_mode(e_step_mode);
  hc.patience = patience;
  hc.max_layers = max_layers;
  hc.upper_layer_mode = upper_mode(e_step_mode);
  return hc;
}

AnalysisResult analyze_network(NetworkSpec network, const RunConfig& config) {
  config.validate();
  AnalysisResult result;
  result.config = config;
  result.network = std::move(network);

  const Matrix adjacency = to_adjacency(result.network);
  Hierarchy hierarchy = build_hierarchy(adjacency, config.hierarchy_config());
  result.converged = hierarchy.converged;

  for (auto& layer : hierarchy.layers) {
    LayerAnalysis analysis;
    analysis.threshold = compute_threshold_info(layer.couplings.Phi);
    analysis.reduced = reduce(layer.couplings, analysis.threshold.value);
    analysis.patterns = match_patterns(analysis.reduced, layer.layer_index, config.hub_min);
    analysis.layer = std::move(layer);
    result.layers.push_back(std::move(analysis));
  }
  return result;
}

AnalysisResult run_analyze(const RunConfig& config) {
  config.validate();
  std::vector<std::string> warnings;
  NetworkSpec network =
      load_network(config.input_path, config.input_format, config.directed, &warnings);
  AnalysisResult result = analyze_network(std::move(network), config);
  result.warnings = std::move(warnings);
  return result;
}

RulesListing run_rules(const RunConfig& config, const std::string& item, int top) {
  config.validate();
  NetworkSpec network = load_network(config.input_path, config.input_format, config.directed);
  const auto& labels = network.node_labels;

  Index node = -1;
  for (Index v = 0; v < network.node_count; ++v) {
    if (static_cast<size_t>(v) < labels.size() && labels[v] == item) {
      node = v;
      break;
    }
  }
  if (node < 0) {
    std::vector<std::string> near;
    const std::string needle = lowercase(item);
    for (const auto& label : labels) {
      if (lowercase(label).find(needle) != std::string::npos) near.push_back(label);
    }
    throw UnknownItemError("no node labeled '" + item + "'", std::move(near));
  }

  const Matrix adjacency = to_adjacency(network);
  HierarchyConfig hc = config.hierarchy_config();
  SelectionResult selected =
      select_model(adjacency, identity_blocking(network.node_count), hc.em, config.patience);
  CouplingMatrices couplings = compute_couplings(identity_blocking(network.node_count),
                                                 selected.model);

  RulesListing listing;
  listing.node = node;
  listing.label = labels[node];
  listing.block = selected.model.hard_assignment[node];
  listing.node_rules = node_rules(couplings, node, top, labels);
  listing.block_rules = block_rules(couplings, listing.block);
  return listing;
}

}  // namespace multiplex
