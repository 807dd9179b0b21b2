#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "dem/dataset.hpp"

// Partitions one therapy group into clusters of patients with identical
// covariate vectors. Grouping is done by canonical key through a hash
// index; distance zero and key equality coincide, so the result is the
// same partition a pairwise distance scan would produce.

namespace dem {

struct Cluster {
  std::size_t cluster_id = 0;
  Group group = Group::A;
  CovariateVector key;
  std::vector<std::string> members;          // patient ids, sorted
  std::vector<int> member_outcomes;          // 1 for positive outcome, aligned with members
  std::size_t size = 0;
  std::size_t outcome_sum = 0;               // members with positive outcome
  std::map<std::string, std::size_t> outcome_histogram;
};

inline double cluster_distance(const Cluster& c1, const Cluster& c2) {
  return l1_distance(c1.key, c2.key);
}

// Clusters are returned sorted by canonical key, members sorted by
// patient id; the output is invariant under permutation of the input.
inline std::vector<Cluster> build_clusters(const std::vector<Patient>& group,
                                           const std::string& positive_outcome) {
  std::unordered_map<std::string, std::size_t> index;
  std::vector<Cluster> clusters;
  std::vector<std::vector<const Patient*>> bucket;
  for (const Patient& p : group) {
    auto key = canonical_key(p.covariates);
    auto [it, inserted] = index.emplace(std::move(key), clusters.size());
    if (inserted) {
      Cluster c;
      c.group = p.group;
      c.key = p.covariates;
      clusters.push_back(std::move(c));
      bucket.emplace_back();
    }
    bucket[it->second].push_back(&p);
  }

  std::vector<std::size_t> order(clusters.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return clusters[a].key < clusters[b].key; });

  std::vector<Cluster> out;
  out.reserve(clusters.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    Cluster c = std::move(clusters[order[rank]]);
    auto& patients = bucket[order[rank]];
    std::sort(patients.begin(), patients.end(),
              [](const Patient* a, const Patient* b) { return a->id < b->id; });
    c.cluster_id = rank;
    c.size = patients.size();
    for (const Patient* p : patients) {
      c.members.push_back(p->id);
      const bool positive = (p->outcome == positive_outcome);
      c.member_outcomes.push_back(positive ? 1 : 0);
      if (positive) ++c.outcome_sum;
      ++c.outcome_histogram[p->outcome];
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace dem
