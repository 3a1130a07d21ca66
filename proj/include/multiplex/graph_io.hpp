#pragma once

#include "multiplex/types.hpp"

#include <string>
#include <utility>
#include <vector>

namespace multiplex {

/// Canonical in-memory network: dense 0-based node ids, a sorted duplicate-free
/// arc list with no self-arcs, and (for undirected input) an arc set closed
/// under reversal.
struct NetworkSpec {
  Index node_count = 0;
  bool directed = true;
  std::vector<std::pair<Index, Index>> arcs;
  std::vector<std::string> node_labels;  // empty or length node_count
  std::vector<std::string> node_tags;    // empty or length node_count

  Index arc_count() const { return static_cast<Index>(arcs.size()); }
};

/// Native format: one arc per line, two whitespace-separated tokens, '#'
/// comments. Tokens map to dense ids in first-appearance order. Self-loops and
/// malformed lines are parse errors here (third-party formats are lenient).
NetworkSpec parse_edge_list(const std::string& text, bool directed);

/// GML subset: graph [ directed 0/1  node [ id label value ]  edge [ source target ] ].
/// Sparse node ids are reindexed densely in appearance order; "label" fills
/// node_labels and "value" fills node_tags. Self-loops are stripped with a warning.
NetworkSpec parse_gml(const std::string& text, std::vector<std::string>* warnings = nullptr);

/// Pajek subset: *Vertices with optional labels, *Arcs (directed) and *Edges
/// (undirected, contributes both orientations). 1-based indices.
NetworkSpec parse_pajek(const std::string& text, std::vector<std::string>* warnings = nullptr);

/// Dense binary adjacency; entries[i][j] = 1 iff (i, j) is an arc.
Matrix to_adjacency(const NetworkSpec& spec);

/// Native edge-list text for the spec. Directed specs list every arc; undirected
/// specs list each unordered pair once. Node identity across a
/// serialize/parse round trip is carried by the emitted label tokens.
std::string serialize_edge_list(const NetworkSpec& spec);

/// Canonical JSON dump of a NetworkSpec.
std::string network_to_json(const NetworkSpec& spec);

enum class InputFormat { edgelist, gml, pajek };

InputFormat input_format_from_string(const std::string& name);
std::string to_string(InputFormat format);

/// Reads and parses a network file; `directed` only applies to edge lists
/// (GML and Pajek carry their own orientation).
NetworkSpec load_network(const std::string& path, InputFormat format, bool directed,
                         std::vector<std::string>* warnings = nullptr);

}  // namespace multiplex
