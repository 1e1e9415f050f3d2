#pragma once

#include <cstdint>
#include <vector>

#include "facroc/metricspace.hpp"

namespace facroc {

// Per-cluster group ratio fairness. A cluster containing only one group scores
// zero; the dataset-level value is the minimum over clusters of
// min(#p / #pbar, #pbar / #p).
double cluster_balance(const std::vector<int>& labels,
                       const std::vector<std::uint8_t>& groups, int cluster);
double clustering_balance(const std::vector<int>& labels,
                          const std::vector<std::uint8_t>& groups);

// Proportionality audit. For each point, D_i is its distance to the medoid of
// its assigned cluster; the audit asks how much any coalition of ceil(n/k)
// points could improve by deviating to some candidate centre y, reported as
// the worst ratio D_i / d(i, y) over the cheapest sufficient coalition.
// Ratios with d = 0 and D_i > 0 count as +inf; 0/0 counts as 0.
struct AuditResult {
  double rho = 0.0;
  std::size_t witness_centre = 0;  // candidate y achieving rho
  bool approximate = false;        // subsampled candidates / mean-based medoids
};

std::vector<std::size_t> cluster_medoids(const DistanceMatrix& D,
                                         const std::vector<int>& labels, int k);
AuditResult proportionality_audit(const DistanceMatrix& D,
                                  const std::vector<int>& labels, int k);
// Large-n variant: candidate centres subsampled, medoids approximated by the
// point nearest the cluster mean.
AuditResult proportionality_audit(const FeatureMatrix& X,
                                  const std::vector<int>& labels, int k,
                                  std::size_t candidate_sample, std::uint64_t seed);

// Mean silhouette coefficient over all points; singleton clusters score 0.
double silhouette(const DistanceMatrix& D, const std::vector<int>& labels, int k);
// Large-n variant: silhouette of a random subsample of points, with distances
// to all points computed on demand.
double silhouette_sampled(const FeatureMatrix& X, const std::vector<int>& labels,
                          int k, std::size_t sample, std::uint64_t seed);

}  // namespace facroc
