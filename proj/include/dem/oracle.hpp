#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "dem/matching.hpp"
#include "dem/statistics.hpp"

// Ground-truth machinery: exhaustive enumeration of maximal matchings on
// small instances and a seeded uniform sampler over realizations. A
// realization records, per pair, the subset chosen from the larger side;
// the smaller side is always fully used.

namespace dem {

class budget_exceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kRngAlgorithm = "mt19937_64";
inline constexpr std::uint64_t kDefaultEnumerationBudget = 1'000'000;

struct RngSeed {
  std::uint64_t seed = 0;
};

struct MatchingRealization {
  // per pair: sorted indices into the larger cluster's members
  std::vector<std::vector<std::size_t>> selections;
  double f_a = 0.0;  // sum over pairs of F_M on side A
  double f_b = 0.0;
  double outcome_count_a = 0.0;  // matched positive outcomes per side
  double outcome_count_b = 0.0;
};

namespace detail {

// Uniform draw in [0, n) from the raw 64-bit stream, by rejection, so
// results do not depend on the standard library's distribution code.
inline std::uint64_t bounded_uniform(std::mt19937_64& gen, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  std::uint64_t r;
  do {
    r = gen();
  } while (r < threshold);
  return r % n;
}

// Uniform subset of size k from {0..n-1}, returned sorted.
inline std::vector<std::size_t> sample_subset(std::mt19937_64& gen, std::size_t n,
                                              std::size_t k) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(bounded_uniform(gen, n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

inline void accumulate_pair(MatchingRealization& real, const MatchedClusterPair& pair,
                            const std::vector<std::size_t>& selection) {
  const bool a_is_larger = pair.a_cluster.size > pair.b_cluster.size;
  const Cluster& larger = a_is_larger ? pair.a_cluster : pair.b_cluster;
  const Cluster& smaller = a_is_larger ? pair.b_cluster : pair.a_cluster;

  double sel_sum = 0.0;
  for (std::size_t idx : selection) sel_sum += larger.member_outcomes[idx];
  const double small_sum = static_cast<double>(smaller.outcome_sum);

  const double f_larger = sel_sum / static_cast<double>(larger.size);
  const double f_smaller = small_sum / static_cast<double>(smaller.size);
  if (a_is_larger) {
    real.f_a += f_larger;
    real.f_b += f_smaller;
    real.outcome_count_a += sel_sum;
    real.outcome_count_b += small_sum;
  } else {
    real.f_a += f_smaller;
    real.f_b += f_larger;
    real.outcome_count_a += small_sum;
    real.outcome_count_b += sel_sum;
  }
}

}  // namespace detail

// All C(max, min) realizations of one pair, in lexicographic subset order.
inline std::vector<MatchingRealization> enumerate_realizations(
    const MatchedClusterPair& pair, std::uint64_t budget = kDefaultEnumerationBudget) {
  const std::size_t n = std::max(pair.a_cluster.size, pair.b_cluster.size);
  const std::size_t k = pair.s_min;
  const BigCount count = count_pair_matchings(pair.a_cluster.size, pair.b_cluster.size);
  if (count > budget)
    throw budget_exceeded("enumeration budget exceeded: C(" + std::to_string(n) + "," +
                          std::to_string(k) + ") = " + count.str() + " > " +
                          std::to_string(budget));

  std::vector<MatchingRealization> out;
  std::vector<std::size_t> subset(k);
  std::iota(subset.begin(), subset.end(), std::size_t{0});
  while (true) {
    MatchingRealization real;
    real.selections.push_back(subset);
    detail::accumulate_pair(real, pair, subset);
    out.push_back(std::move(real));

    // next combination
    std::size_t i = k;
    while (i > 0 && subset[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++subset[i - 1];
    for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
  return out;
}

inline MatchingRealization sample_uniform_realization(
    const std::vector<MatchedClusterPair>& pairs, std::mt19937_64& gen) {
  MatchingRealization real;
  real.selections.reserve(pairs.size());
  for (const MatchedClusterPair& pair : pairs) {
    const std::size_t n = std::max(pair.a_cluster.size, pair.b_cluster.size);
    auto selection = detail::sample_subset(gen, n, pair.s_min);
    detail::accumulate_pair(real, pair, selection);
    real.selections.push_back(std::move(selection));
  }
  return real;
}

inline MatchingRealization sample_uniform_realization(
    const std::vector<MatchedClusterPair>& pairs, RngSeed seed) {
  std::mt19937_64 gen(seed.seed);
  return sample_uniform_realization(pairs, gen);
}

struct ConvergenceCheckpoint {
  std::uint64_t samples = 0;
  double mean_a = 0.0;
  double mean_b = 0.0;
};

struct ConvergenceStudy {
  std::uint64_t samples = 0;
  double mean_a = 0.0;  // running mean of sum_j F_M per side
  double mean_b = 0.0;
  std::vector<ConvergenceCheckpoint> checkpoints;  // at powers of 10 and at r
};

inline ConvergenceStudy convergence_study(const std::vector<MatchedClusterPair>& pairs,
                                          std::uint64_t r, RngSeed seed) {
  if (r < 1) throw invalid_input("convergence_study: sample count must be >= 1");
  std::mt19937_64 gen(seed.seed);
  ConvergenceStudy study;
  double sum_a = 0.0, sum_b = 0.0;
  std::uint64_t next_checkpoint = 1;
  for (std::uint64_t k = 1; k <= r; ++k) {
    MatchingRealization real = sample_uniform_realization(pairs, gen);
    sum_a += real.f_a;
    sum_b += real.f_b;
    if (k == next_checkpoint || k == r) {
      study.checkpoints.push_back({k, sum_a / k, sum_b / k});
      while (next_checkpoint <= k) next_checkpoint *= 10;
    }
  }
  study.samples = r;
  study.mean_a = sum_a / r;
  study.mean_b = sum_b / r;
  return study;
}

struct RealizationRow {
  double outcome_count_a = 0.0;
  double outcome_count_b = 0.0;
  std::optional<double> p_value;  // absent when the 2x2 table is degenerate
};

struct RealizationComparisonStudy {
  std::uint64_t samples = 0;
  std::size_t matched_per_side = 0;  // sum of s_min
  std::vector<RealizationRow> rows;
  double mean_outcome_count_a = 0.0;
  double mean_outcome_count_b = 0.0;
};

// Samples r uniform realizations of the matched dataset and reports each
// realization's matched-outcome counts and chi-square p-value, showing
// the dispersion a single-realization method is exposed to.
inline RealizationComparisonStudy realization_comparison_study(const Dataset& dataset,
                                                               std::uint64_t r, RngSeed seed) {
  const MatchResult result = run_dem(dataset);
  std::mt19937_64 gen(seed.seed);
  RealizationComparisonStudy study;
  study.samples = r;
  study.matched_per_side = result.matched_pairs_per_realization;
  study.rows.reserve(r);
  double sum_a = 0.0, sum_b = 0.0;
  const double n_side = static_cast<double>(study.matched_per_side);
  for (std::uint64_t k = 0; k < r; ++k) {
    MatchingRealization real = sample_uniform_realization(result.pairs, gen);
    RealizationRow row;
    row.outcome_count_a = real.outcome_count_a;
    row.outcome_count_b = real.outcome_count_b;
    if (n_side >= 1) {
      try {
        row.p_value = chi_square_2x2(real.outcome_count_a, n_side, real.outcome_count_b, n_side)
                          .p_value;
      } catch (const invalid_input&) {
        // degenerate table, leave p absent
      }
    }
    sum_a += row.outcome_count_a;
    sum_b += row.outcome_count_b;
    study.rows.push_back(row);
  }
  if (r > 0) {
    study.mean_outcome_count_a = sum_a / static_cast<double>(r);
    study.mean_outcome_count_b = sum_b / static_cast<double>(r);
  }
  return study;
}

}  // namespace dem
