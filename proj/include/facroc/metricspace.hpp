#pragma once

#include <cstdint>
#include <vector>

#include "facroc/ingest.hpp"

namespace facroc {

// Dense symmetric Euclidean distance matrix. Only for n <= kDenseLimit points;
// larger inputs must use on-demand distances straight from the features.
inline constexpr std::size_t kDenseLimit = 6000;

struct DistanceMatrix {
  std::size_t n = 0;
  std::vector<double> d;  // row-major n*n
  double at(std::size_t i, std::size_t j) const { return d[i * n + j]; }
};

double point_distance(const FeatureMatrix& X, std::size_t i, std::size_t j);
DistanceMatrix distance_matrix(const FeatureMatrix& X);

// One pairwise instance for ROC analysis: similarity score (negated distance)
// and whether the clustering put both endpoints together.
struct ScoredPair {
  std::uint32_t i, j;
  double score;
  std::uint8_t same_cluster;
};

enum class PairSlice { all, group_p, group_pbar };

struct SamplerConfig {
  std::size_t full_enumeration_limit = 2000;   // member count at or below: all pairs
  std::size_t sample_size = 2'000'000;         // distinct pairs above the limit
  std::uint64_t seed = 42;
  bool any_endpoint = false;  // false: a pair belongs to a group only when both
                              // endpoints do; true: either endpoint suffices
};

struct ScoredPairSet {
  std::vector<ScoredPair> pairs;
  PairSlice slice = PairSlice::all;
  bool sampled = false;
  std::uint64_t seed = 0;
  std::size_t member_count = 0;  // points eligible for this slice
};

// Builds the pair set for one slice of the data under a clustering assignment.
// The dense overload reads distances from the matrix; the lazy overload
// computes them from the features on demand (any n).
ScoredPairSet scored_pairs(const DistanceMatrix& D, const std::vector<int>& labels,
                           const std::vector<std::uint8_t>& groups, PairSlice slice,
                           const SamplerConfig& cfg);
ScoredPairSet scored_pairs(const FeatureMatrix& X, const std::vector<int>& labels,
                           PairSlice slice, const SamplerConfig& cfg);

}  // namespace facroc
