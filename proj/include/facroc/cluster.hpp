#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "facroc/metricspace.hpp"

namespace facroc {

struct ClusterResult {
  std::vector<int> labels;  // 0..k-1 per point
  int k = 0;                // clusters actually produced
  std::string model;
  double objective = 0.0;   // model-specific (kmeans: total within-cluster SSE)
  std::uint64_t seed = 0;
};

struct KMeansConfig {
  int k = 2;
  int restarts = 10;
  int max_iter = 300;
  double tol = 1e-6;  // max over centroids of squared centre shift
  std::uint64_t seed = 42;
};

// Lloyd iterations from k-means++ seeds; best of `restarts` runs by SSE.
// Empty clusters are repaired by reseeding at the point farthest from its
// current centroid.
ClusterResult kmeans(const FeatureMatrix& X, const KMeansConfig& cfg);

enum class Linkage { ward, average, complete };

struct HierarchicalConfig {
  int k = 2;
  Linkage linkage = Linkage::ward;
};

struct MergeStep {
  int a, b;        // cluster ids merged, a < b; result keeps id a
  double height;   // linkage distance at the merge
};

// Agglomerative clustering by repeated global-minimum merges under the
// Lance-Williams update. Cluster ids are point slot indices; ties in merge
// distance break towards the smallest (a, b) pair. Requires n <= kDenseLimit.
ClusterResult hierarchical(const FeatureMatrix& X, const HierarchicalConfig& cfg,
                           std::vector<MergeStep>* history = nullptr);

}  // namespace facroc
