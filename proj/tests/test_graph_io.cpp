#include "multiplex/graph_io.hpp"

#include "multiplex/rng.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

using namespace multiplex;

TEST_SUITE_BEGIN("graph_io");

TEST_CASE("edge list: integer tokens, directed") {
  NetworkSpec spec = parse_edge_list("0 1\n1 2", true);
  CHECK(spec.node_count == 3);
  CHECK(spec.directed);
  CHECK(spec.arcs == std::vector<std::pair<Index, Index>>{{0, 1}, {1, 2}});
  CHECK(spec.node_labels == std::vector<std::string>{"0", "1", "2"});
}

TEST_CASE("edge list: undirected doubling") {
  NetworkSpec spec = parse_edge_list("a b", false);
  CHECK(spec.node_count == 2);
  CHECK(spec.arcs == std::vector<std::pair<Index, Index>>{{0, 1}, {1, 0}});
}

TEST_CASE("edge list: self-loop and malformed lines are errors with line numbers") {
  CHECK_THROWS_WITH_AS(parse_edge_list("0 0", true), doctest::Contains("line 1"), ParseError);
  try {
    parse_edge_list("0 1\nx y z", true);
    FAIL("expected throw");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("edge list: comments, blanks, duplicate collapse") {
  NetworkSpec spec = parse_edge_list("# header\n\n0 1\n0 1\n 1 0 \n", true);
  CHECK(spec.node_count == 2);
  CHECK(spec.arcs == std::vector<std::pair<Index, Index>>{{0, 1}, {1, 0}});
}

TEST_CASE("gml: minimal undirected graph doubles edges") {
  const char* text =
      "graph [\n directed 0\n node [ id 10 ]\n node [ id 20 ]\n"
      " edge [ source 10 target 20 ]\n]\n";
  NetworkSpec spec = parse_gml(text);
  CHECK(spec.node_count == 2);
  CHECK_FALSE(spec.directed);
  CHECK(spec.arcs == std::vector<std::pair<Index, Index>>{{0, 1}, {1, 0}});
}

TEST_CASE("gml: labels, values, sparse ids, ignored attributes") {
  const char* text =
      "Creator \"x\"\ngraph [\n directed 1\n"
      " node [ id 5 label \"alpha\" value \"l\" w 1.5 ]\n"
      " node [ id 99 label \"beta\" value \"c\" ]\n"
      " edge [ source 99 target 5 weight 3 ]\n]\n";
  NetworkSpec spec = parse_gml(text);
  CHECK(spec.node_count == 2);
  CHECK(spec.directed);
  CHECK(spec.arcs == std::vector<std::pair<Index, Index>>{{1, 0}});
  CHECK(spec.node_labels == std::vector<std::string>{"alpha", "beta"});
  CHECK(spec.node_tags == std::vector<std::string>{"l", "c"});
}

TEST_CASE("gml: errors") {
  CHECK_THROWS_AS(parse_gml("graph [ node [ id 1 ]"), ParseError);  // unbalanced
  CHECK_THROWS_AS(parse_gml("graph [ node [ id 1 ] edge [ source 1 target 2 ] ]"), ParseError);
  CHECK_THROWS_AS(parse_gml("nothing here"), ParseError);
}

TEST_CASE("gml: third-party self-loop is stripped with a warning") {
  std::vector<std::string> warnings;
  NetworkSpec spec = parse_gml(
      "graph [ node [ id 1 ] node [ id 2 ] edge [ source 1 target 1 ] "
      "edge [ source 1 target 2 ] ]",
      &warnings);
  CHECK(spec.arcs == std::vector<std::pair<Index, Index>>{{0, 1}, {1, 0}});
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("self-loop") != std::string::npos);
}

TEST_CASE("gml: lesmis corpus parses to the published shape") {
  NetworkSpec spec = load_network(std::string(MULTIPLEX_DATA_DIR) + "/lesmis.gml",
                                  InputFormat::gml, false);
  CHECK(spec.node_count == 77);
  CHECK_FALSE(spec.directed);
  CHECK(spec.arc_count() == 2 * 254);
  Matrix a = to_adjacency(spec);
  CHECK(a.isApprox(a.transpose()));
  CHECK(spec.node_labels[11] == "Valjean");
  CHECK(a.row(11).sum() == 36.0);  // Valjean's degree in the Knuth data
}

TEST_CASE("pajek: arcs are 1-based and directed") {
  NetworkSpec spec = parse_pajek("*Vertices 2\n1 \"x\"\n2 \"y\"\n*Arcs\n1 2\n");
  CHECK(spec.node_count == 2);
  CHECK(spec.directed);
  CHECK(spec.arcs == std::vector<std::pair<Index, Index>>{{0, 1}});
  CHECK(spec.node_labels == std::vector<std::string>{"x", "y"});
}

TEST_CASE("pajek: mixed sections, edges doubled") {
  NetworkSpec spec = parse_pajek("*Vertices 3\n*Arcs\n1 2\n*Edges\n2 3\n");
  CHECK(spec.directed);
  CHECK(spec.arcs == std::vector<std::pair<Index, Index>>{{0, 1}, {1, 2}, {2, 1}});
}

TEST_CASE("pajek: errors") {
  CHECK_THROWS_AS(parse_pajek("*Edges\n1 2\n"), ParseError);       // missing *Vertices
  CHECK_THROWS_AS(parse_pajek("*Vertices 2\n*Arcs\n1 5\n"), ParseError);  // out of range
  CHECK_THROWS_AS(parse_pajek(""), ParseError);
}

TEST_CASE("to_adjacency examples") {
  NetworkSpec two;
  two.node_count = 2;
  two.arcs = {{0, 1}};
  Matrix a = to_adjacency(two);
  CHECK(a(0, 1) == 1.0);
  CHECK(a(1, 0) == 0.0);
  CHECK(a.diagonal().isZero());

  NetworkSpec empty;
  empty.node_count = 3;
  CHECK(to_adjacency(empty).isZero());

  NetworkSpec triangle = parse_edge_list("0 1\n1 2\n2 0", false);
  Matrix t = to_adjacency(triangle);
  CHECK(t.sum() == 6.0);
  CHECK(t.isApprox(t.transpose()));
}

TEST_CASE("round trip: serialize/parse preserves the labeled structure") {
  Rng rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.below(8));
    const bool directed = rng.below(2) == 0;
    NetworkSpec spec;
    spec.node_count = n;
    spec.directed = directed;
    for (Index v = 0; v < n; ++v) spec.node_labels.push_back("v" + std::to_string(v));
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        if (i != j && rng.uniform() < 0.4) {
          spec.arcs.emplace_back(i, j);
          if (!directed) spec.arcs.emplace_back(j, i);
        }
      }
    }
    std::sort(spec.arcs.begin(), spec.arcs.end());
    spec.arcs.erase(std::unique(spec.arcs.begin(), spec.arcs.end()), spec.arcs.end());

    NetworkSpec parsed = parse_edge_list(serialize_edge_list(spec), directed);
    // node identity travels through the label tokens
    std::vector<Index> to_new(n, -1);
    for (Index v = 0; v < parsed.node_count; ++v) {
      for (Index u = 0; u < n; ++u) {
        if (spec.node_labels[u] == parsed.node_labels[v]) to_new[u] = v;
      }
    }
    Matrix original = to_adjacency(spec);
    Matrix reparsed = to_adjacency(parsed);
    bool equal = true;
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        if (original(i, j) == 0.0) continue;  // isolated nodes drop out of an edge list
        equal = equal && to_new[i] >= 0 && to_new[j] >= 0 &&
                reparsed(to_new[i], to_new[j]) == original(i, j);
      }
    }
    CHECK(equal);
    CHECK(parsed.arc_count() == spec.arc_count());
  }
}

TEST_CASE("round trip: exact equality when appearance order is the identity") {
  NetworkSpec spec = parse_edge_list("0 1\n0 2\n1 2\n2 3", true);
  NetworkSpec again = parse_edge_list(serialize_edge_list(spec), true);
  CHECK(to_adjacency(again) == to_adjacency(spec));
}

TEST_CASE("network json dump") {
  NetworkSpec spec = parse_edge_list("a b", false);
  std::string json = network_to_json(spec);
  CHECK(json.find("\"node_count\": 2") != std::string::npos);
  CHECK(json.find("\"directed\": false") != std::string::npos);
}

TEST_SUITE_END();
