#pragma once

#include <cstdint>
#include <vector>

#include "facroc/cluster.hpp"
#include "facroc/metricspace.hpp"

namespace facroc {

struct FairletDecomposition {
  std::vector<std::vector<std::size_t>> fairlets;  // partition of point indices
  int b = 1, r = 1;                                // composition target, t = b/r
  std::vector<std::size_t> centers;                // fairlet medoid indices
  double cost = 0.0;  // sum over fairlets of distances from members to center
};

// Turns a balance target in (0, 1] into the smallest (b, r) with b/r = t.
// Targets not expressible with r <= 10 are rejected.
std::pair<int, int> balance_ratio(double t);

// Exact decomposition: minimum-cost matching (via min-cost flow) for (1, r')
// targets, greedy nearest-neighbour batching for general (b, r). Throws
// infeasible_fairness_error when the dataset balance is below t.
FairletDecomposition fairlet_decompose(const DistanceMatrix& D,
                                       const std::vector<std::uint8_t>& groups,
                                       double t);

// Near-linear approximate decomposition: seeded random-shift grid hierarchy,
// pairing co-located minority/majority points per cell and bubbling residue
// upward. Same partition/balance guarantees as the exact decomposition.
FairletDecomposition scalable_fairlet_decompose(const FeatureMatrix& X,
                                                const std::vector<std::uint8_t>& groups,
                                                double t, std::uint64_t seed);

// Recomputes the decomposition cost / centers under explicit distances
// (used to compare decompositions produced by different algorithms).
double decomposition_cost(const DistanceMatrix& D, const FairletDecomposition& dec);

// Phase 2: k-median medoid-swap local search over fairlet centers (5 seeded
// restarts); every point inherits its fairlet's cluster.
ClusterResult fairlet_cluster(const FairletDecomposition& dec, const DistanceMatrix& D,
                              int k, std::uint64_t seed);
// Large-n variant computing center-to-center distances from features on demand.
ClusterResult fairlet_cluster(const FairletDecomposition& dec, const FeatureMatrix& X,
                              int k, std::uint64_t seed);

// Proportionally fair clustering by event-driven ball growth: a candidate
// center opens when ceil(n/k) still-uncaptured points fall inside its ball;
// open centers keep capturing as the radius grows. May open fewer than k
// centers; ClusterResult.k reports the achieved count.
ClusterResult greedy_capture(const DistanceMatrix& D, int k);

}  // namespace facroc
