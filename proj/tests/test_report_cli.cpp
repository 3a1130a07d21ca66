#include "multiplex/report.hpp"

#include "multiplex/synth.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace multiplex;
namespace fs = std::filesystem;

namespace test_support {

CommandResult run_cli(const std::string& args) {
  const std::string command = std::string(MULTIPLEX_CLI_PATH) + " " + args + " 2>&1";
  CommandResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[512];
  while (fgets(buffer, sizeof(buffer), pipe)) result.output += buffer;
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

}  // namespace test_support

using test_support::run_cli;

TEST_SUITE_BEGIN("report_cli");

namespace {

NetworkSpec clique_fixture() {
  PlantedSpec spec;
  spec.block_sizes = {4, 4};
  spec.coupling_plan = Matrix::Identity(2, 2);
  spec.directed = false;
  return generate(spec).first;
}

RunConfig fixture_config() {
  RunConfig cfg;
  cfg.input_path = "fixture";
  cfg.seed = 7;
  return cfg;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("multiplex_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int value = 0;
    return value;
  }
};

}  // namespace

TEST_CASE("report json is deterministic and self-consistent") {
  AnalysisResult first = analyze_network(clique_fixture(), fixture_config());
  AnalysisResult second = analyze_network(clique_fixture(), fixture_config());
  const std::string a = report_json(first).dump(2);
  const std::string b = report_json(second).dump(2);
  CHECK(a == b);

  auto parsed = nlohmann::json::parse(a);
  CHECK(parsed["schema_version"] == 1);
  CHECK(parsed["dataset"]["node_count"] == 8);
  REQUIRE(parsed["layers"].size() >= 1);
  const auto& layer = parsed["layers"][0];
  CHECK(layer["K"] == 2);
  // total_cost in the trace is recomputable from its own fields
  for (const auto& e : layer["selection"]["entries"]) {
    CHECK(double(e["total_cost"]) ==
          doctest::Approx(double(e["neg_log_likelihood"]) + double(e["penalty"])));
  }
  // block memberships cover every node exactly once
  std::vector<int> seen(8, 0);
  for (const auto& block : layer["blocks"]) {
    for (int node : block["nodes"]) seen[node]++;
  }
  for (int count : seen) CHECK(count == 1);
}

TEST_CASE("trace csv shape") {
  AnalysisResult result = analyze_network(clique_fixture(), fixture_config());
  std::istringstream lines(trace_csv(result));
  std::string line;
  std::getline(lines, line);
  CHECK(line == "layer,K,neg_ll,penalty,total_cost");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(line.find(',') != std::string::npos);
  }
  size_t expected = 0;
  for (const auto& layer : result.layers) expected += layer.layer.trace.entries.size();
  CHECK(rows == static_cast<int>(expected));
}

TEST_CASE("rules csv lists block rules and top node rules") {
  AnalysisResult result = analyze_network(clique_fixture(), fixture_config());
  std::istringstream lines(rules_csv(result, 3));
  std::string line;
  std::getline(lines, line);
  CHECK(line == "kind,antecedent,consequent,strength,antecedent_label,consequent_label");
  int block_rows = 0, node_rows = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("block,", 0) == 0) ++block_rows;
    if (line.rfind("node,", 0) == 0) ++node_rows;
  }
  const int k = result.layers[0].layer.model.K;
  CHECK(block_rows == k * k);
  CHECK(node_rows == 8 * 3);
}

TEST_CASE("dot output names every block and thresholded arc") {
  AnalysisResult result = analyze_network(clique_fixture(), fixture_config());
  const std::string dot = layer_dot(result.layers[0]);
  CHECK(dot.find("digraph layer1") != std::string::npos);
  CHECK(dot.find("b0 [label=\"B1\\n4 nodes\"") != std::string::npos);
  CHECK(dot.find("b1 [label=\"B2\\n4 nodes\"") != std::string::npos);
  CHECK(dot.find("b0 -> b0") != std::string::npos);  // self-coupling arc
  CHECK(dot.find("b0 -> b1") == std::string::npos);  // cut by the threshold
}

TEST_CASE("pgm output is a dense block-sorted matrix") {
  AnalysisResult result = analyze_network(clique_fixture(), fixture_config());
  const std::string pgm = layer_pgm(result.network, result.layers[0]);
  std::istringstream in(pgm);
  std::string magic;
  int w = 0, h = 0, depth = 0;
  in >> magic >> w >> h >> depth;
  CHECK(magic == "P2");
  CHECK(w == 8);
  CHECK(h == 8);
  CHECK(depth == 255);
  int zeros = 0, value = 0;
  while (in >> value) zeros += value == 0;
  CHECK(zeros == 24);  // one dark pixel per arc
}

TEST_CASE("cli: generate writes the edge list and a truth sidecar") {
  TempDir dir;
  const std::string out = (dir.path / "net.edges").string();
  auto result = run_cli("generate --sizes 4,4 --plan \"1,0;0,1\" --seed 3 --output " + out);
  CHECK(result.exit_code == 0);
  std::istringstream lines(slurp(out));
  std::string line;
  int arc_lines = 0;
  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] != '#') ++arc_lines;
  }
  CHECK(arc_lines == 24);
  auto truth = nlohmann::json::parse(slurp(out + ".truth.json"));
  CHECK(truth["block_sizes"] == nlohmann::json({4, 4}));
  CHECK(truth["seed"] == 3);

  const std::string first_bytes = slurp(out);
  auto again = run_cli("generate --sizes 4,4 --plan \"1,0;0,1\" --seed 3 --output " + out);
  CHECK(again.exit_code == 0);
  CHECK(slurp(out) == first_bytes);
}

TEST_CASE("cli: analyze produces byte-identical artifacts for the same config") {
  TempDir dir;
  const std::string net = (dir.path / "net.edges").string();
  run_cli("generate --sizes 4,4 --plan \"0.9,0.05;0.05,0.9\" --seed 5 --output " + net);
  const std::string base = " analyze --input " + net + " --format edgelist --seed 11 ";
  auto first = run_cli(base + "--output-dir " + (dir.path / "a").string());
  auto second = run_cli(base + "--output-dir " + (dir.path / "b").string());
  REQUIRE(first.exit_code == 0);
  REQUIRE(second.exit_code == 0);
  for (const char* name : {"report.json", "trace.csv", "rules.csv", "layer1.dot", "layer1.pgm"}) {
    CHECK(slurp(dir.path / "a" / name) == slurp(dir.path / "b" / name));
  }
}

TEST_CASE("cli: emit subsets restrict the artifact list") {
  TempDir dir;
  const std::string net = (dir.path / "net.edges").string();
  run_cli("generate --sizes 3,3 --plan \"1,0;0,1\" --seed 2 --output " + net);
  auto result = run_cli("analyze --input " + net + " --seed 1 --emit report_json --output-dir " +
                        (dir.path / "out").string());
  CHECK(result.exit_code == 0);
  CHECK(fs::exists(dir.path / "out" / "report.json"));
  CHECK_FALSE(fs::exists(dir.path / "out" / "trace.csv"));
}

TEST_CASE("cli: exit codes") {
  TempDir dir;
  auto missing = run_cli("analyze --input " + (dir.path / "nope.edges").string());
  CHECK(missing.exit_code == 2);

  const std::string net = (dir.path / "net.edges").string();
  run_cli("generate --sizes 3,3 --plan \"1,0;0,1\" --seed 2 --output " + net);

  auto bad_value = run_cli("analyze --input " + net + " --restarts 0 --output-dir " +
                           (dir.path / "x").string());
  CHECK(bad_value.exit_code == 64);
  auto bad_flag = run_cli("analyze --input " + net + " --no-such-flag 1");
  CHECK(bad_flag.exit_code == 64);
  auto bad_prob = run_cli("generate --sizes 2,2 --plan \"1.5,0;0,1\" --output " +
                          (dir.path / "y.edges").string());
  CHECK(bad_prob.exit_code == 64);

  auto unknown_item = run_cli("rules --input " + net + " --item zzz");
  CHECK(unknown_item.exit_code == 65);

  auto parse_fail = run_cli("analyze --input " + net + " --format gml --output-dir " +
                            (dir.path / "z").string());
  CHECK(parse_fail.exit_code == 2);
}

TEST_CASE("cli: rules listing is strength-sorted and honors --top") {
  TempDir dir;
  const std::string net = (dir.path / "net.edges").string();
  run_cli("generate --sizes 4,4 --plan \"0.9,0.1;0.1,0.9\" --seed 5 --output " + net);
  auto listing = run_cli("rules --input " + net + " --item 0 --top 3 --seed 2");
  REQUIRE(listing.exit_code == 0);
  CHECK(listing.output.find("node rules:") != std::string::npos);
  CHECK(listing.output.find("block rules:") != std::string::npos);

  auto empty_top = run_cli("rules --input " + net + " --item 0 --top 0 --seed 2");
  CHECK(empty_top.exit_code == 0);
}

TEST_CASE("cli: rules on an all-isolated network reports clamp-level strengths") {
  TempDir dir;
  const std::string net = (dir.path / "isolated.gml").string();
  std::ofstream out(net);
  out << "graph [ directed 0 node [ id 0 label \"a\" ] node [ id 1 label \"b\" ] "
         "node [ id 2 label \"c\" ] ]";
  out.close();
  RunConfig cfg;
  cfg.input_path = net;
  cfg.input_format = InputFormat::gml;
  cfg.seed = 1;
  RulesListing listing = run_rules(cfg, "a", 10);
  REQUIRE(listing.node_rules.size() == 2);
  for (const auto& rule : listing.node_rules) CHECK(rule.strength <= 1e-6);
  for (const auto& rule : listing.block_rules) CHECK(rule.strength <= 1e-6);
}

TEST_CASE("atomic writes leave no temp files behind") {
  TempDir dir;
  const std::string path = (dir.path / "file.txt").string();
  write_file_atomic(path, "payload");
  CHECK(slurp(path) == "payload");
  CHECK_FALSE(fs::exists(path + ".tmp"));
}

TEST_SUITE_END();
