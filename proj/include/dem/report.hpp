#pragma once

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dem/csv.hpp"
#include "dem/matching.hpp"
#include "dem/oracle.hpp"
#include "dem/statistics.hpp"

// Canonical report emission. Key order is fixed (insertion order), numbers
// are printed as the shortest decimal that round-trips, output is
// newline-terminated; report bytes are a pure function of the dataset
// content (as a multiset), the config and the tool version.

namespace dem {

inline constexpr const char* kToolVersion = "1.0.0";

using json = nlohmann::ordered_json;

inline json key_to_json(const CovariateVector& key) {
  json arr = json::array();
  for (const auto& e : key) arr.push_back(e.canonical);
  return arr;
}

inline json config_to_json(const RunConfig& config) {
  json j;
  j["input"] = config.input_path;
  j["group_col"] = config.group_col;
  j["group_a"] = config.group_a_value;
  j["group_b"] = config.group_b_value;
  j["outcome_col"] = config.outcome_col;
  j["outcome_positive"] = config.outcome_positive;
  j["covariates"] = config.covariate_cols;
  j["numeric"] = config.numeric_cols;
  return j;
}

inline json build_match_report(const RunConfig& config, const Dataset& dataset,
                               const MatchResult& result) {
  std::vector<std::string> warnings;

  json j;
  j["tool_version"] = kToolVersion;
  j["config"] = config_to_json(config);
  j["dataset"] = {{"n_a", dataset.group_a.size()},
                  {"n_b", dataset.group_b.size()},
                  {"covariate_dimension", dataset.covariate_names.size()}};

  const std::size_t clusters_a =
      result.pairs.size() + result.unmatched_a.size();
  const std::size_t clusters_b =
      result.pairs.size() + result.unmatched_b.size();
  j["clusters"] = {{"n_a", clusters_a}, {"n_b", clusters_b}};

  const auto total = count_total_matchings(result.pairs);
  j["matching"] = {{"pair_count", result.pairs.size()},
                   {"matched_per_side", result.matched_pairs_per_realization},
                   {"matched_patient_total", result.matched_patient_total},
                   {"total_matchings", {{"decimal", total.decimal},
                                        {"digit_count", total.digit_count}}}};

  const double n_side = static_cast<double>(result.matched_pairs_per_realization);
  j["results"] = {
      {"r_a", result.r_a},
      {"r_b", result.r_b},
      {"expected_outcome_count_a", result.expected_outcome_count_a},
      {"expected_outcome_count_b", result.expected_outcome_count_b},
      {"expected_outcome_rate_a",
       n_side > 0 ? result.expected_outcome_count_a / n_side : 0.0},
      {"expected_outcome_rate_b",
       n_side > 0 ? result.expected_outcome_count_b / n_side : 0.0}};

  j["variance"] = {
      {"paper_a", group_variance(result, Side::A, VarianceKind::Paper)},
      {"paper_b", group_variance(result, Side::B, VarianceKind::Paper)},
      {"frequency_a", group_variance(result, Side::A, VarianceKind::Frequency)},
      {"frequency_b", group_variance(result, Side::B, VarianceKind::Frequency)}};

  j["chi_square"] = nullptr;
  if (result.pairs.empty()) {
    warnings.push_back(
        "no exact matches found; investigate the therapy groups for systematic differences");
  } else {
    try {
      const auto chi = chi_square_2x2(result.expected_outcome_count_a, n_side,
                                      result.expected_outcome_count_b, n_side);
      j["chi_square"] = {{"statistic", chi.statistic},
                         {"dof", chi.dof},
                         {"p_value", chi.p_value}};
    } catch (const invalid_input& e) {
      warnings.push_back(std::string("chi-square test undefined: ") + e.what());
    }
  }

  auto summarize_unmatched = [](const std::vector<Cluster>& clusters) {
    std::size_t patients = 0;
    for (const auto& c : clusters) patients += c.size;
    return json{{"cluster_count", clusters.size()}, {"patient_count", patients}};
  };
  j["unmatched"] = {{"a", summarize_unmatched(result.unmatched_a)},
                    {"b", summarize_unmatched(result.unmatched_b)}};
  j["warnings"] = warnings;
  return j;
}

inline json build_enumerate_report(const RunConfig& config, const MatchResult& result) {
  json j;
  j["tool_version"] = kToolVersion;
  j["config"] = config_to_json(config);
  j["config"]["budget"] = config.budget;
  json pairs = json::array();
  for (const auto& pair : result.pairs) {
    json pj;
    pj["pair_id"] = pair.pair_id;
    pj["key"] = key_to_json(pair.a_cluster.key);
    pj["a_size"] = pair.a_cluster.size;
    pj["b_size"] = pair.b_cluster.size;
    pj["s_min"] = pair.s_min;
    const auto realizations = enumerate_realizations(pair, config.budget);
    pj["realization_count"] = realizations.size();
    json rj = json::array();
    for (const auto& real : realizations) {
      rj.push_back({{"selection", real.selections.front()},
                    {"f_a", real.f_a},
                    {"f_b", real.f_b},
                    {"outcome_count_a", real.outcome_count_a},
                    {"outcome_count_b", real.outcome_count_b}});
    }
    pj["realizations"] = std::move(rj);
    pairs.push_back(std::move(pj));
  }
  j["pairs"] = std::move(pairs);
  return j;
}

inline json build_simulate_report(const RunConfig& config, const MatchResult& result,
                                  const ConvergenceStudy& convergence,
                                  const RealizationComparisonStudy& comparison) {
  json j;
  j["tool_version"] = kToolVersion;
  j["config"] = config_to_json(config);
  j["config"]["seed"] = config.seed;
  j["config"]["samples"] = config.samples;
  j["rng_algorithm"] = kRngAlgorithm;
  j["closed_form"] = {{"r_a", result.r_a}, {"r_b", result.r_b}};

  json checkpoints = json::array();
  for (const auto& cp : convergence.checkpoints)
    checkpoints.push_back(
        {{"samples", cp.samples}, {"mean_a", cp.mean_a}, {"mean_b", cp.mean_b}});
  j["convergence"] = {{"samples", convergence.samples},
                      {"mean_a", convergence.mean_a},
                      {"mean_b", convergence.mean_b},
                      {"checkpoints", std::move(checkpoints)}};

  json rows = json::array();
  for (const auto& row : comparison.rows) {
    json rj = {{"outcome_count_a", row.outcome_count_a},
               {"outcome_count_b", row.outcome_count_b}};
    rj["p_value"] = row.p_value ? json(*row.p_value) : json(nullptr);
    rows.push_back(std::move(rj));
  }
  j["comparison"] = {{"samples", comparison.samples},
                     {"matched_per_side", comparison.matched_per_side},
                     {"mean_outcome_count_a", comparison.mean_outcome_count_a},
                     {"mean_outcome_count_b", comparison.mean_outcome_count_b},
                     {"realizations", std::move(rows)}};
  return j;
}

inline std::string to_canonical_json(const json& j) { return j.dump(2) + "\n"; }

// Aligned plain-text rendering of the same report tree.
inline std::string to_text(const json& j) {
  std::ostringstream out;
  const std::size_t label_width = 28;
  std::function<void(const json&, const std::string&)> walk =
      [&](const json& node, const std::string& prefix) {
        for (const auto& [key, value] : node.items()) {
          const std::string label = prefix.empty() ? key : prefix + "." + key;
          if (value.is_object()) {
            walk(value, label);
          } else {
            std::string rendered = value.is_string() ? value.get<std::string>() : value.dump();
            out << label;
            if (label.size() < label_width) out << std::string(label_width - label.size(), ' ');
            out << "  " << rendered << "\n";
          }
        }
      };
  walk(j, "");
  return out.str();
}

inline std::string render_report(const json& j, const std::string& format) {
  return format == "text" ? to_text(j) : to_canonical_json(j);
}

}  // namespace dem
