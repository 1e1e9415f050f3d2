#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "facroc/ingest.hpp"

namespace facroc {

struct KCurvePoint {
  int k;
  double aucc;
  bool failed = false;
};

struct SelectKResult {
  int k_star = 0;
  std::vector<KCurvePoint> curve;
};

// Sweeps k over [k_min, k_max] with the named model (default "kmeans"),
// scoring each clustering by unsliced AUCC; returns the argmax, ties toward
// smaller k. Model failures at individual k values are recorded on the curve
// and skipped; if every k fails, throws.
SelectKResult select_k(const FeatureMatrix& X, const std::string& model, int k_min,
                       int k_max, std::uint64_t seed);

}  // namespace facroc
