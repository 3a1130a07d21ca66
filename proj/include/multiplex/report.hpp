#pragma once

#include "multiplex/analysis.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace multiplex {

/// Full machine-readable report; every derived number in it can be recomputed
/// from the serialized memberships and Phi/Psi matrices. Serialization is
/// byte-deterministic for a fixed AnalysisResult.
nlohmann::json report_json(const AnalysisResult& result);

/// Selection traces of all layers: layer,K,neg_ll,penalty,total_cost.
std::string trace_csv(const AnalysisResult& result);

/// Layer-1 association rules: all block rules plus the strongest node rules
/// per node.
std::string rules_csv(const AnalysisResult& result, int node_rules_per_node = 10);

/// Graphviz rendering of one layer's reduced blocking model with block sizes
/// and coupling weights.
std::string layer_dot(const LayerAnalysis& analysis);

/// Block-sorted adjacency matrix as ASCII PGM (dark pixel = arc).
std::string layer_pgm(const NetworkSpec& network, const LayerAnalysis& analysis);

/// Ground-truth sidecar for generated networks.
nlohmann::json truth_json(const BlockingAssignment& truth, const Matrix& plan, bool directed,
                          std::uint64_t seed);

/// Writes content to path via a temp file and rename.
void write_file_atomic(const std::string& path, const std::string& content);

/// Writes every artifact requested by result.config.emit into
/// result.config.output_dir; returns the written paths.
std::vector<std::string> write_artifacts(const AnalysisResult& result);

}  // namespace multiplex
