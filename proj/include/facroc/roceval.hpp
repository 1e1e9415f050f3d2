#pragma once

#include <cstdint>
#include <vector>

#include "facroc/metricspace.hpp"

namespace facroc {

// ROC curve over scored pairs, tie-corrected: pairs sharing a score advance as
// one diagonal segment, which makes the area under the curve equal the
// rank-sum (half credit for ties) statistic.
struct RocCurve {
  std::vector<double> fpr, tpr;  // same length, starts at (0,0), ends at (1,1)
  std::size_t n_pos = 0, n_neg = 0;
  double auc = 0.0;
};

RocCurve roc_curve(const ScoredPairSet& pairs);

// Area under the pairwise ROC curve ("do similar pairs share a cluster?").
double aucc(const ScoredPairSet& pairs);

// Area between the two group-restricted ROC curves, integrated exactly:
// both curves are piecewise linear in FPR, so the absolute difference is
// integrated segment by segment, splitting where the curves cross.
struct FacrocResult {
  double value = 0.0;
  double aucc_p = 0.0, aucc_pbar = 0.0;
  std::size_t crossings = 0;  // strict sign changes of the curve difference
  RocCurve curve_p, curve_pbar;
};

FacrocResult compute_facroc(const ScoredPairSet& pairs_p,
                            const ScoredPairSet& pairs_pbar);

}  // namespace facroc
