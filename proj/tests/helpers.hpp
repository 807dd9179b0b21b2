#pragma once

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dem/clustering.hpp"
#include "dem/dataset.hpp"
#include "dem/matching.hpp"

// Shared test fixtures: dataset builders, random-instance generators and
// literal transcriptions of the quadratic clustering / linear-search
// matching loops, kept independent of the production key-grouping path.

namespace demtest {

inline dem::CovariateVector numeric_vector(const std::vector<double>& values) {
  dem::CovariateVector cv;
  for (double v : values) cv.push_back(dem::CovariateEntry::make_numeric(std::to_string(v)));
  return cv;
}

inline dem::Patient make_patient(std::string id, dem::Group group,
                                 const std::vector<double>& values, int outcome) {
  dem::Patient p;
  p.id = std::move(id);
  p.group = group;
  p.covariates = numeric_vector(values);
  p.outcome = outcome ? "1" : "0";
  return p;
}

inline dem::Cluster make_cluster(dem::Group group, const std::vector<double>& key,
                                 const std::vector<int>& outcomes) {
  dem::Cluster c;
  c.group = group;
  c.key = numeric_vector(key);
  c.size = outcomes.size();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    c.members.push_back(std::string(group == dem::Group::A ? "a" : "b") + std::to_string(i));
    c.member_outcomes.push_back(outcomes[i] ? 1 : 0);
    if (outcomes[i]) ++c.outcome_sum;
    ++c.outcome_histogram[outcomes[i] ? "1" : "0"];
  }
  return c;
}

inline dem::MatchedClusterPair make_pair(const std::vector<int>& a_outcomes,
                                         const std::vector<int>& b_outcomes,
                                         const std::vector<double>& key = {1.0}) {
  dem::MatchedClusterPair pair;
  pair.a_cluster = make_cluster(dem::Group::A, key, a_outcomes);
  pair.b_cluster = make_cluster(dem::Group::B, key, b_outcomes);
  pair.s_min = std::min(pair.a_cluster.size, pair.b_cluster.size);
  pair.w_a = static_cast<double>(pair.s_min) /
             (static_cast<double>(pair.a_cluster.size) * pair.a_cluster.size);
  pair.w_b = static_cast<double>(pair.s_min) /
             (static_cast<double>(pair.b_cluster.size) * pair.b_cluster.size);
  return pair;
}

// Random dataset over a small covariate alphabet so exact collisions are
// common. Covariate values are small integers rendered as numerics.
inline dem::Dataset random_dataset(std::mt19937_64& rng, std::size_t max_per_group = 100,
                                   std::size_t max_dim = 6) {
  std::uniform_int_distribution<std::size_t> dim_dist(1, max_dim);
  const std::size_t dim = dim_dist(rng);
  std::uniform_int_distribution<std::size_t> size_dist(1, max_per_group);
  std::uniform_int_distribution<int> value_dist(0, 2);
  std::uniform_int_distribution<int> outcome_dist(0, 1);

  dem::Dataset d;
  for (std::size_t i = 0; i < dim; ++i) d.covariate_names.push_back("c" + std::to_string(i));
  int id = 0;
  auto fill = [&](std::vector<dem::Patient>& group, dem::Group g) {
    const std::size_t n = size_dist(rng);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> values;
      for (std::size_t j = 0; j < dim; ++j) values.push_back(value_dist(rng));
      group.push_back(make_patient("p" + std::to_string(id++), g, values, outcome_dist(rng)));
    }
  };
  fill(d.group_a, dem::Group::A);
  fill(d.group_b, dem::Group::B);
  return d;
}

// Literal transcription of the quadratic clustering loop: scan patients
// in input order, open a cluster for each unclustered patient, sweep the
// remainder for distance-zero members.
inline std::vector<std::vector<const dem::Patient*>> quadratic_clusters(
    const std::vector<dem::Patient>& group) {
  std::vector<std::vector<const dem::Patient*>> clusters;
  std::vector<bool> is_clustered(group.size(), false);
  for (std::size_t v = 0; v < group.size(); ++v) {
    if (is_clustered[v]) continue;
    clusters.push_back({&group[v]});
    is_clustered[v] = true;
    for (std::size_t u = v + 1; u < group.size(); ++u) {
      if (is_clustered[u]) continue;
      if (dem::l1_distance(group[v], group[u]) == 0.0) {
        clusters.back().push_back(&group[u]);
        is_clustered[u] = true;
      }
    }
  }
  return clusters;
}

// Literal transcription of the matching loop: for every A cluster, linear
// search over B clusters for one at distance zero.
inline std::vector<std::pair<std::size_t, std::size_t>> literal_matching(
    const std::vector<dem::Cluster>& clusters_a, const std::vector<dem::Cluster>& clusters_b) {
  std::vector<std::pair<std::size_t, std::size_t>> matches;
  for (std::size_t g = 0; g < clusters_a.size(); ++g) {
    for (std::size_t i = 0; i < clusters_b.size(); ++i) {
      if (dem::cluster_distance(clusters_a[g], clusters_b[i]) == 0.0) {
        matches.emplace_back(g, i);
        break;
      }
    }
  }
  return matches;
}

// Partition of a group as a canonical set of member-id sets.
inline std::set<std::set<std::string>> partition_signature(
    const std::vector<std::vector<const dem::Patient*>>& clusters) {
  std::set<std::set<std::string>> sig;
  for (const auto& c : clusters) {
    std::set<std::string> ids;
    for (const auto* p : c) ids.insert(p->id);
    sig.insert(std::move(ids));
  }
  return sig;
}

inline std::set<std::set<std::string>> partition_signature(
    const std::vector<dem::Cluster>& clusters) {
  std::set<std::set<std::string>> sig;
  for (const auto& c : clusters)
    sig.insert(std::set<std::string>(c.members.begin(), c.members.end()));
  return sig;
}

}  // namespace demtest
