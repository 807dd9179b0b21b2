#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dem/csv.hpp"
#include "dem/matching.hpp"
#include "dem/oracle.hpp"
#include "dem/report.hpp"

// Exit codes: 0 success, 1 zero exact matches found, 2 input error,
// 3 enumeration budget exceeded.

namespace {

void add_dataset_options(CLI::App* cmd, dem::RunConfig& config) {
  cmd->add_option("--input", config.input_path, "input CSV file")->required();
  cmd->add_option("--group-col", config.group_col, "name of the group column")->required();
  cmd->add_option("--group-a", config.group_a_value, "group column value mapped to group A")
      ->required();
  cmd->add_option("--group-b", config.group_b_value, "group column value mapped to group B")
      ->required();
  cmd->add_option("--outcome-col", config.outcome_col, "name of the outcome column")->required();
  cmd->add_option("--outcome-positive", config.outcome_positive,
                  "outcome value treated as positive (default: 1)");
  cmd->add_option("--covariates", config.covariate_cols, "covariate column names")
      ->required()
      ->delimiter(',');
  cmd->add_option("--numeric", config.numeric_cols,
                  "covariate columns parsed as numbers (others compare as tokens)")
      ->delimiter(',');
  cmd->add_option("--out", config.out_path, "write the report to this path instead of stdout");
  cmd->add_option("--format", config.format, "report format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
}

void emit(const dem::RunConfig& config, const std::string& body) {
  if (config.out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(config.out_path, std::ios::binary);
    if (!out) throw dem::ingest_error("cannot open output file '" + config.out_path + "'");
    out << body;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic exact matching of two therapy groups"};
  app.require_subcommand(1);

  dem::RunConfig config;
  auto* match_cmd = app.add_subcommand("match", "run the matching pipeline and report");
  add_dataset_options(match_cmd, config);
  auto* enumerate_cmd =
      app.add_subcommand("enumerate", "list all maximal-matching realizations per pair");
  add_dataset_options(enumerate_cmd, config);
  enumerate_cmd->add_option("--budget", config.budget,
                            "per-pair enumeration budget (default: 1000000)");
  auto* simulate_cmd =
      app.add_subcommand("simulate", "seeded uniform-realization convergence study");
  add_dataset_options(simulate_cmd, config);
  simulate_cmd->add_option("--seed", config.seed, "RNG seed");
  simulate_cmd->add_option("--samples", config.samples, "number of sampled realizations");

  CLI11_PARSE(app, argc, argv);

  try {
    const dem::Dataset dataset = dem::ingest_csv(config);
    const dem::MatchResult result = dem::run_dem(dataset);

    if (match_cmd->parsed()) {
      const auto report = dem::build_match_report(config, dataset, result);
      emit(config, dem::render_report(report, config.format));
      return result.pairs.empty() ? 1 : 0;
    }
    if (enumerate_cmd->parsed()) {
      const auto report = dem::build_enumerate_report(config, result);
      emit(config, dem::render_report(report, config.format));
      return 0;
    }
    // simulate
    const auto convergence =
        dem::convergence_study(result.pairs, config.samples, dem::RngSeed{config.seed});
    const auto comparison =
        dem::realization_comparison_study(dataset, config.samples, dem::RngSeed{config.seed});
    const auto report = dem::build_simulate_report(config, result, convergence, comparison);
    emit(config, dem::render_report(report, config.format));
    return 0;
  } catch (const dem::budget_exceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const dem::ingest_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const dem::invalid_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
