#include "multiplex/report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace multiplex {

namespace {

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string format_weight(double value) {
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "%.4f", value);
  return buffer;
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    quoted += c;
    if (c == '"') quoted += '"';
  }
  quoted += '"';
  return quoted;
}

nlohmann::json matrix_json(const Matrix& m) {
  auto rows = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json pattern_json(const PatternInstance& inst) {
  nlohmann::json j;
  j["blocks"] = inst.blocks;
  if (inst.core >= 0) j["core"] = inst.core;
  if (!inst.spokes.empty()) j["spokes"] = inst.spokes;
  if (!inst.left.empty()) j["left"] = inst.left;
  if (!inst.right.empty()) j["right"] = inst.right;
  return j;
}

// nodes grouped by the layer's hard cluster assignment
std::vector<std::vector<Index>> cluster_members(const LayerAnalysis& analysis) {
  const auto& layer = analysis.layer;
  std::vector<std::vector<Index>> members(layer.model.K);
  for (Index node = 0; node < layer.blocking.n; ++node) {
    members[layer.model.hard_assignment[layer.blocking.block_of[node]]].push_back(node);
  }
  return members;
}

}  // namespace

nlohmann::json report_json(const AnalysisResult& result) {
  nlohmann::json report;
  report["schema_version"] = 1;

  report["dataset"] = {{"path", result.config.input_path},
                       {"format", to_string(result.config.input_format)},
                       {"directed", result.network.directed},
                       {"node_count", result.network.node_count},
                       {"arc_count", result.network.arc_count()}};

  const RunConfig& cfg = result.config;
  report["config"] = {{"seed", cfg.seed},
                      {"restarts", cfg.restarts},
                      {"tolerance", cfg.tolerance},
                      {"max_iterations", cfg.max_iterations},
                      {"epsilon", cfg.epsilon},
                      {"patience", cfg.patience},
                      {"hub_min", cfg.hub_min},
                      {"max_layers", cfg.max_layers},
                      {"e_step_mode", cfg.e_step_mode},
                      {"directed", cfg.directed}};

  report["converged"] = result.converged;
  if (!result.warnings.empty()) report["warnings"] = result.warnings;

  auto layers = nlohmann::json::array();
  for (const auto& analysis : result.layers) {
    const auto& layer = analysis.layer;
    nlohmann::json entry;
    entry["layer_index"] = layer.layer_index;
    entry["K"] = layer.model.K;
    entry["block_count"] = layer.blocking.block_count;
    entry["granularity"] = {{"num", layer.blocking.n},
                            {"den", layer.blocking.block_count},
                            {"value", layer.blocking.granularity()}};
    entry["log_likelihood"] = layer.model.log_likelihood;
    entry["em_iterations"] = layer.model.em_iterations;

    nlohmann::json selection;
    selection["chosen_K"] = layer.trace.chosen_K;
    selection["stopped_early"] = layer.trace.stopped_early;
    auto scan = nlohmann::json::array();
    for (const auto& e : layer.trace.entries) {
      scan.push_back({{"K", e.K},
                      {"neg_log_likelihood", e.neg_log_likelihood},
                      {"penalty", e.penalty},
                      {"total_cost", e.total_cost}});
    }
    selection["entries"] = std::move(scan);
    entry["selection"] = std::move(selection);

    auto members = cluster_members(analysis);
    auto blocks = nlohmann::json::array();
    for (size_t c = 0; c < members.size(); ++c) {
      nlohmann::json block;
      block["id"] = c;
      block["size"] = members[c].size();
      block["nodes"] = members[c];
      if (!result.network.node_labels.empty()) {
        auto labels = nlohmann::json::array();
        for (Index node : members[c]) labels.push_back(result.network.node_labels[node]);
        block["labels"] = std::move(labels);
      }
      blocks.push_back(std::move(block));
    }
    entry["blocks"] = std::move(blocks);

    entry["phi"] = matrix_json(analysis.layer.couplings.Phi);
    entry["psi"] = matrix_json(analysis.layer.couplings.Psi);
    entry["threshold"] = analysis.threshold.value;
    entry["threshold_degenerate"] = analysis.threshold.degenerate;
    entry["coupling_groups"] = analysis.threshold.groups;

    auto arcs = nlohmann::json::array();
    for (auto [p, q] : analysis.reduced.arc_list()) arcs.push_back({p, q});
    entry["reduced_arcs"] = std::move(arcs);

    nlohmann::json patterns;
    for (PatternKind kind : all_pattern_kinds()) {
      auto list = nlohmann::json::array();
      for (const auto& inst : analysis.patterns.of(kind)) list.push_back(pattern_json(inst));
      patterns[to_string(kind)] = std::move(list);
    }
    entry["patterns"] = std::move(patterns);

    auto rules = nlohmann::json::array();
    for (Index p = 0; p < layer.model.K; ++p) {
      auto list = nlohmann::json::array();
      for (const auto& rule : block_rules(layer.couplings, p)) {
        list.push_back({{"consequent", rule.consequent}, {"strength", rule.strength}});
      }
      rules.push_back(std::move(list));
    }
    entry["block_rules"] = std::move(rules);

    layers.push_back(std::move(entry));
  }
  report["layers"] = std::move(layers);
  return report;
}

std::string trace_csv(const AnalysisResult& result) {
  std::ostringstream out;
  out << "layer,K,neg_ll,penalty,total_cost\n";
  for (const auto& analysis : result.layers) {
    for (const auto& e : analysis.layer.trace.entries) {
      out << analysis.layer.layer_index << ',' << e.K << ',' << format_double(e.neg_log_likelihood)
          << ',' << format_double(e.penalty) << ',' << format_double(e.total_cost) << '\n';
    }
  }
  return out.str();
}

std::string rules_csv(const AnalysisResult& result, int node_rules_per_node) {
  std::ostringstream out;
  out << "kind,antecedent,consequent,strength,antecedent_label,consequent_label\n";
  if (result.layers.empty()) return out.str();
  const auto& base = result.layers.front().layer;
  for (Index p = 0; p < base.model.K; ++p) {
    for (const auto& rule : block_rules(base.couplings, p)) {
      out << "block," << rule.antecedent << ',' << rule.consequent << ','
          << format_double(rule.strength) << ",,\n";
    }
  }
  const auto& labels = result.network.node_labels;
  for (Index v = 0; v < result.network.node_count; ++v) {
    for (const auto& rule : node_rules(base.couplings, v, node_rules_per_node, labels)) {
      out << "node," << rule.antecedent << ',' << rule.consequent << ','
          << format_double(rule.strength) << ',' << csv_field(rule.antecedent_label) << ','
          << csv_field(rule.consequent_label) << '\n';
    }
  }
  return out.str();
}

std::string layer_dot(const LayerAnalysis& analysis) {
  auto members = cluster_members(analysis);
  std::ostringstream out;
  out << "digraph layer" << analysis.layer.layer_index << " {\n";
  out << "  // reduced blocking model, threshold " << format_weight(analysis.threshold.value)
      << "\n";
  for (size_t c = 0; c < members.size(); ++c) {
    out << "  b" << c << " [label=\"B" << c + 1 << "\\n" << members[c].size()
        << " nodes\", shape=circle];\n";
  }
  for (auto [p, q] : analysis.reduced.arc_list()) {
    const double weight = analysis.layer.couplings.Phi(p, q);
    out << "  b" << p << " -> b" << q << " [label=\"" << format_weight(weight)
        << "\", penwidth=" << format_weight(0.5 + 4.0 * weight) << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string layer_pgm(const NetworkSpec& network, const LayerAnalysis& analysis) {
  const auto& layer = analysis.layer;
  const Index n = network.node_count;
  std::vector<Index> order(n);
  for (Index v = 0; v < n; ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return layer.model.hard_assignment[layer.blocking.block_of[a]] <
           layer.model.hard_assignment[layer.blocking.block_of[b]];
  });

  Matrix adjacency = to_adjacency(network);
  std::ostringstream out;
  out << "P2\n" << n << ' ' << n << "\n255\n";
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) {
      out << (adjacency(order[r], order[c]) > 0.0 ? "0" : "255") << (c + 1 < n ? " " : "");
    }
    out << '\n';
  }
  return out.str();
}

nlohmann::json truth_json(const BlockingAssignment& truth, const Matrix& plan, bool directed,
                          std::uint64_t seed) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["seed"] = seed;
  j["directed"] = directed;
  j["block_of"] = truth.block_of;
  auto sizes = nlohmann::json::array();
  for (const auto& members : truth.members) sizes.push_back(members.size());
  j["block_sizes"] = std::move(sizes);
  j["coupling_plan"] = matrix_json(plan);
  return j;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string temp = path + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + temp + "'");
    out << content;
    if (!out) throw std::runtime_error("short write to '" + temp + "'");
  }
  std::filesystem::rename(temp, path);
}

std::vector<std::string> write_artifacts(const AnalysisResult& result) {
  namespace fs = std::filesystem;
  const auto& cfg = result.config;
  fs::create_directories(cfg.output_dir);
  std::vector<std::string> written;

  auto emit = [&](const std::string& name, const std::string& content) {
    const std::string path = (fs::path(cfg.output_dir) / name).string();
    write_file_atomic(path, content);
    written.push_back(path);
  };

  if (cfg.emit.count("report_json")) emit("report.json", report_json(result).dump(2) + "\n");
  if (cfg.emit.count("trace_csv")) emit("trace.csv", trace_csv(result));
  if (cfg.emit.count("rules_csv")) emit("rules.csv", rules_csv(result));
  if (cfg.emit.count("dot")) {
    for (const auto& analysis : result.layers) {
      emit("layer" + std::to_string(analysis.layer.layer_index) + ".dot", layer_dot(analysis));
    }
  }
  if (cfg.emit.count("matrix_pgm")) {
    for (const auto& analysis : result.layers) {
      emit("layer" + std::to_string(analysis.layer.layer_index) + ".pgm",
           layer_pgm(result.network, analysis));
    }
  }
  return written;
}

}  // namespace multiplex
