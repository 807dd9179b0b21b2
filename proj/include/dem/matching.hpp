#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "dem/clustering.hpp"
#include "dem/dataset.hpp"

// Cross-group cluster matching and min-weighting. A cluster pair is
// matched iff the two assigned covariate vectors are equal; each matched
// pair carries S = min(|C_A|, |C_B|) and the weights S/|C|^2 per side.

namespace dem {

struct MatchedClusterPair {
  std::size_t pair_id = 0;
  Cluster a_cluster;
  Cluster b_cluster;
  std::size_t s_min = 0;
  double w_a = 0.0;
  double w_b = 0.0;
};

struct MatchResult {
  std::vector<MatchedClusterPair> pairs;
  std::vector<Cluster> unmatched_a;
  std::vector<Cluster> unmatched_b;
  double r_a = 0.0;
  double r_b = 0.0;
  std::size_t matched_pairs_per_realization = 0;  // sum of s_min over pairs
  std::size_t matched_patient_total = 0;          // 2 * sum of s_min
  double expected_outcome_count_a = 0.0;          // sum of s_min * mean outcome per side
  double expected_outcome_count_b = 0.0;
};

struct MatchPartition {
  std::vector<MatchedClusterPair> pairs;  // ordered by a_cluster key
  std::vector<Cluster> unmatched_a;
  std::vector<Cluster> unmatched_b;
};

inline MatchPartition match_clusters(const std::vector<Cluster>& clusters_a,
                                     const std::vector<Cluster>& clusters_b) {
  std::unordered_map<std::string, std::size_t> b_index;
  for (std::size_t i = 0; i < clusters_b.size(); ++i)
    b_index.emplace(canonical_key(clusters_b[i].key), i);

  MatchPartition part;
  std::vector<bool> b_used(clusters_b.size(), false);
  for (const Cluster& ca : clusters_a) {
    auto it = b_index.find(canonical_key(ca.key));
    if (it == b_index.end()) {
      part.unmatched_a.push_back(ca);
      continue;
    }
    const Cluster& cb = clusters_b[it->second];
    b_used[it->second] = true;
    MatchedClusterPair pair;
    pair.pair_id = part.pairs.size();
    pair.a_cluster = ca;
    pair.b_cluster = cb;
    pair.s_min = std::min(ca.size, cb.size);
    pair.w_a = static_cast<double>(pair.s_min) / (static_cast<double>(ca.size) * ca.size);
    pair.w_b = static_cast<double>(pair.s_min) / (static_cast<double>(cb.size) * cb.size);
    part.pairs.push_back(std::move(pair));
  }
  for (std::size_t i = 0; i < clusters_b.size(); ++i)
    if (!b_used[i]) part.unmatched_b.push_back(clusters_b[i]);
  return part;
}

// Min-weighted results R_A, R_B plus the matched-count bookkeeping.
// Sums run over pairs in canonical key order so the floating-point
// result is the same for any input permutation.
inline MatchResult weight_and_score(MatchPartition part) {
  MatchResult res;
  res.pairs = std::move(part.pairs);
  res.unmatched_a = std::move(part.unmatched_a);
  res.unmatched_b = std::move(part.unmatched_b);
  for (const MatchedClusterPair& p : res.pairs) {
    res.r_a += p.w_a * static_cast<double>(p.a_cluster.outcome_sum);
    res.r_b += p.w_b * static_cast<double>(p.b_cluster.outcome_sum);
    res.matched_pairs_per_realization += p.s_min;
    res.expected_outcome_count_a += static_cast<double>(p.s_min) *
                                    static_cast<double>(p.a_cluster.outcome_sum) /
                                    static_cast<double>(p.a_cluster.size);
    res.expected_outcome_count_b += static_cast<double>(p.s_min) *
                                    static_cast<double>(p.b_cluster.outcome_sum) /
                                    static_cast<double>(p.b_cluster.size);
  }
  res.matched_patient_total = 2 * res.matched_pairs_per_realization;
  return res;
}

inline MatchResult run_dem(const Dataset& d) {
  auto violations = validate_dataset(d);
  if (!violations.empty())
    throw invalid_input("dataset invalid: " + violations.front().detail);
  auto clusters_a = build_clusters(d.group_a, d.positive_outcome);
  auto clusters_b = build_clusters(d.group_b, d.positive_outcome);
  return weight_and_score(match_clusters(clusters_a, clusters_b));
}

}  // namespace dem
