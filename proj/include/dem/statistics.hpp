#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dem/clustering.hpp"
#include "dem/matching.hpp"

// Closed-form quantities over clusters and matchings: relative
// frequencies, exact matching counts, expectancies, the two variance
// normalizations and the Pearson chi-square outcome test.

namespace dem {

using BigCount = boost::multiprecision::cpp_int;

enum class Side { A, B };

inline const Cluster& pair_side(const MatchedClusterPair& pair, Side side) {
  return side == Side::A ? pair.a_cluster : pair.b_cluster;
}

inline double relative_frequency(const Cluster& c) {
  return static_cast<double>(c.outcome_sum) / static_cast<double>(c.size);
}

// Outcome frequency contributed by one matching realization: the chosen
// s_min members of the given side, normalized by the full side size.
inline double relative_matching_frequency(const MatchedClusterPair& pair, Side side,
                                          std::span<const std::size_t> selection) {
  const Cluster& c = pair_side(pair, side);
  if (selection.size() != pair.s_min)
    throw invalid_input("selection size " + std::to_string(selection.size()) +
                        " != s_min " + std::to_string(pair.s_min));
  double sum = 0.0;
  for (std::size_t idx : selection) {
    if (idx >= c.size) throw invalid_input("selection index out of range");
    sum += c.member_outcomes[idx];
  }
  return sum / static_cast<double>(c.size);
}

inline double categorical_frequency(const Cluster& c, const std::string& k,
                                    const std::vector<std::string>& domain = {}) {
  if (!domain.empty() && std::find(domain.begin(), domain.end(), k) == domain.end())
    throw invalid_input("outcome value '" + k + "' not in declared domain");
  auto it = c.outcome_histogram.find(k);
  const double count = it == c.outcome_histogram.end() ? 0.0 : static_cast<double>(it->second);
  return count / static_cast<double>(c.size);
}

inline BigCount binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigCount result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    result *= static_cast<unsigned long long>(n - k + i);
    result /= static_cast<unsigned long long>(i);
  }
  return result;
}

// Number of distinct maximal matchings between one cluster pair.
inline BigCount count_pair_matchings(std::size_t a_size, std::size_t b_size) {
  return binomial(std::max(a_size, b_size), std::min(a_size, b_size));
}

struct TotalMatchings {
  BigCount value;
  std::size_t digit_count = 1;
  std::string decimal;
};

inline TotalMatchings count_total_matchings(const std::vector<MatchedClusterPair>& pairs) {
  TotalMatchings t;
  t.value = 1;
  for (const auto& p : pairs) t.value *= count_pair_matchings(p.a_cluster.size, p.b_cluster.size);
  t.decimal = t.value.str();
  t.digit_count = t.decimal.size();
  return t;
}

// E(C) = s_min / |C|^2 * outcome_sum, the expectancy of the relative
// matching frequency over the uniform sequence of maximal matchings.
inline double cluster_expectancy(const MatchedClusterPair& pair, Side side) {
  const Cluster& c = pair_side(pair, side);
  return static_cast<double>(pair.s_min) / (static_cast<double>(c.size) * c.size) *
         static_cast<double>(c.outcome_sum);
}

inline double group_expectancy(const MatchResult& result, Side side) {
  double sum = 0.0;
  for (const auto& p : result.pairs) sum += cluster_expectancy(p, side);
  return sum;
}

// Variance in the scale the closed form states it: E(C) * (1 - K/N) *
// (N - s_min)/(N - 1). A singleton side is fully matched, variance 0.
inline double cluster_variance_paper(const MatchedClusterPair& pair, Side side) {
  const Cluster& c = pair_side(pair, side);
  const double n = static_cast<double>(c.size);
  if (c.size == 1) return 0.0;
  const double k_rate = static_cast<double>(c.outcome_sum) / n;
  return cluster_expectancy(pair, side) * (1.0 - k_rate) *
         (n - static_cast<double>(pair.s_min)) / (n - 1.0);
}

// Variance of the relative matching frequency itself: the hypergeometric
// count variance divided by N^2. Equals cluster_variance_paper / N.
inline double cluster_variance_frequency(const MatchedClusterPair& pair, Side side) {
  const Cluster& c = pair_side(pair, side);
  const double n = static_cast<double>(c.size);
  if (c.size == 1) return 0.0;
  const double k_rate = static_cast<double>(c.outcome_sum) / n;
  return static_cast<double>(pair.s_min) * k_rate * (1.0 - k_rate) *
         (n - static_cast<double>(pair.s_min)) / (n - 1.0) / (n * n);
}

enum class VarianceKind { Paper, Frequency };

inline double group_variance(const MatchResult& result, Side side, VarianceKind which) {
  double sum = 0.0;
  for (const auto& p : result.pairs)
    sum += which == VarianceKind::Paper ? cluster_variance_paper(p, side)
                                        : cluster_variance_frequency(p, side);
  return sum;
}

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 1;
  double p_value = 1.0;
};

// Pearson chi-square on the 2x2 table, no continuity correction.
// Counts may be fractional (expected matched-outcome counts).
inline ChiSquareResult chi_square_2x2(double deaths_a, double n_a, double deaths_b, double n_b) {
  if (n_a < 1 || n_b < 1 || deaths_a < 0 || deaths_b < 0 || deaths_a > n_a || deaths_b > n_b)
    throw invalid_input("chi_square_2x2: counts out of range");
  const double a = deaths_a, b = n_a - deaths_a;
  const double c = deaths_b, d = n_b - deaths_b;
  const double col1 = a + c, col2 = b + d;
  if (col1 == 0.0 || col2 == 0.0)
    throw invalid_input("chi_square_2x2: degenerate margin (constant outcome)");
  const double n = n_a + n_b;
  const double diff = a * d - b * c;
  ChiSquareResult res;
  res.statistic = n * diff * diff / (n_a * n_b * col1 * col2);
  // upper tail of chi-square with 1 dof
  res.p_value = std::erfc(std::sqrt(res.statistic / 2.0));
  return res;
}

}  // namespace dem
