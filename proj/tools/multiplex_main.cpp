#include "multiplex/analysis.hpp"
#include "multiplex/report.hpp"
#include "multiplex/synth.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitParse = 2;      // unreadable or malformed input
constexpr int kExitConfig = 64;    // invalid command line / configuration
constexpr int kExitNoItem = 65;    // --item matched no node label
constexpr int kExitInternal = 70;  // internal invariant breach

multiplex::Matrix parse_plan(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream row_stream(text);
  std::string row;
  while (std::getline(row_stream, row, ';')) {
    rows.emplace_back();
    std::istringstream cell_stream(row);
    std::string cell;
    while (std::getline(cell_stream, cell, ',')) {
      rows.back().push_back(std::stod(cell));
    }
  }
  if (rows.empty()) throw std::invalid_argument("empty coupling plan");
  multiplex::Matrix plan(rows.size(), rows.front().size());
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != static_cast<size_t>(plan.cols())) {
      throw std::invalid_argument("coupling plan rows differ in length");
    }
    for (size_t c = 0; c < rows[r].size(); ++c) plan(r, c) = rows[r][c];
  }
  return plan;
}

void print_rules(const multiplex::RulesListing& listing) {
  std::cout << "node " << listing.node << " \"" << listing.label << "\" (block "
            << listing.block + 1 << ")\n";
  std::cout << "node rules:\n";
  for (const auto& rule : listing.node_rules) {
    std::printf("  %s -> %s <%.4f>\n", rule.antecedent_label.c_str(),
                rule.consequent_label.c_str(), rule.strength);
  }
  std::cout << "block rules:\n";
  for (const auto& rule : listing.block_rules) {
    std::printf("  B%lld -> B%lld <%.4f>\n", static_cast<long long>(rule.antecedent + 1),
                static_cast<long long>(rule.consequent + 1), rule.strength);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiplex structure discovery in networks"};
  app.require_subcommand(1);

  multiplex::RunConfig config;
  std::string format = "edgelist";
  std::vector<std::string> emit;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--input", config.input_path, "network file")->required();
    cmd->add_option("--format", format, "edgelist|gml|pajek")->capture_default_str();
    cmd->add_flag("--directed", config.directed, "treat edge-list input as directed");
    cmd->add_option("--seed", config.seed, "RNG seed")->capture_default_str();
    cmd->add_option("--restarts", config.restarts)->capture_default_str();
    cmd->add_option("--tolerance", config.tolerance)->capture_default_str();
    cmd->add_option("--max-iterations", config.max_iterations)->capture_default_str();
    cmd->add_option("--epsilon", config.epsilon)->capture_default_str();
    cmd->add_option("--patience", config.patience)->capture_default_str();
    cmd->add_option("--e-step-mode", config.e_step_mode, "auto|exact|sampled")
        ->capture_default_str();
  };

  auto* analyze = app.add_subcommand("analyze", "run the full pipeline and write reports");
  add_common(analyze);
  analyze->add_option("--hub-min", config.hub_min)->capture_default_str();
  analyze->add_option("--max-layers", config.max_layers)->capture_default_str();
  analyze->add_option("--output-dir", config.output_dir)->capture_default_str();
  analyze->add_option("--emit", emit,
                      "artifacts: report_json trace_csv dot rules_csv matrix_pgm");

  std::vector<long long> sizes;
  std::string plan_text;
  std::string output_path = "network.edges";
  bool undirected = false;
  std::uint64_t gen_seed = 0;
  auto* generate = app.add_subcommand("generate", "write a planted synthetic network");
  generate->add_option("--sizes", sizes, "block sizes")->required()->delimiter(',');
  generate->add_option("--plan", plan_text, "K x K arc probabilities, rows ; separated")
      ->required();
  generate->add_flag("--undirected", undirected, "draw once per unordered pair");
  generate->add_option("--seed", gen_seed)->capture_default_str();
  generate->add_option("--output", output_path)->capture_default_str();

  std::string item;
  int top = 10;
  auto* rules = app.add_subcommand("rules", "list association rules for one item");
  add_common(rules);
  rules->add_option("--item", item, "node label")->required();
  rules->add_option("--top", top, "node rules to list")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitConfig;
  }

  try {
    config.input_format = multiplex::input_format_from_string(format);

    if (analyze->parsed()) {
      if (!emit.empty()) config.emit = std::set<std::string>(emit.begin(), emit.end());
      config.validate();
      multiplex::AnalysisResult result = multiplex::run_analyze(config);
      for (const auto& warning : result.warnings) std::cerr << "warning: " << warning << "\n";
      for (const auto& path : multiplex::write_artifacts(result)) {
        std::cout << "wrote " << path << "\n";
      }
    } else if (generate->parsed()) {
      multiplex::PlantedSpec spec;
      spec.block_sizes.assign(sizes.begin(), sizes.end());
      spec.coupling_plan = parse_plan(plan_text);
      spec.directed = !undirected;
      spec.seed = gen_seed;
      auto [network, truth] = multiplex::generate(spec);
      multiplex::write_file_atomic(output_path, multiplex::serialize_edge_list(network));
      multiplex::write_file_atomic(
          output_path + ".truth.json",
          multiplex::truth_json(truth, spec.coupling_plan, spec.directed, spec.seed).dump(2) +
              "\n");
      std::cout << "wrote " << output_path << " (" << network.node_count << " nodes, "
                << network.arc_count() << " arcs)\n";
    } else if (rules->parsed()) {
      config.validate();
      print_rules(multiplex::run_rules(config, item, top));
    }
  } catch (const multiplex::UnknownItemError& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (!e.candidates().empty()) {
      std::cerr << "did you mean:\n";
      for (const auto& candidate : e.candidates()) std::cerr << "  " << candidate << "\n";
    }
    return kExitNoItem;
  } catch (const multiplex::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}
