#include "facroc/selection.hpp"

#include <memory>

#include "facroc/common.hpp"
#include "facroc/evaluate.hpp"
#include "facroc/metricspace.hpp"
#include "facroc/roceval.hpp"

namespace facroc {

SelectKResult select_k(const FeatureMatrix& X, const std::string& model, int k_min,
                       int k_max, std::uint64_t seed) {
  if (k_min < 2 || k_min > k_max || static_cast<std::size_t>(k_max) > X.n)
    throw usage_error("select-k: need 2 <= k_min <= k_max <= n");

  std::unique_ptr<DistanceMatrix> D;
  if (X.n <= kDenseLimit) D = std::make_unique<DistanceMatrix>(distance_matrix(X));

  SelectKResult res;
  double best = -1;
  for (int k = k_min; k <= k_max; ++k) {
    KCurvePoint pt;
    pt.k = k;
    try {
      ClusterResult cl =
          run_model(X, D.get(), model, k, mix_seed(seed, static_cast<std::uint64_t>(k)),
                    0.4);
      SamplerConfig cfg;
      cfg.seed = seed;
      ScoredPairSet pairs =
          D ? scored_pairs(*D, cl.labels, X.groups, PairSlice::all, cfg)
            : scored_pairs(X, cl.labels, PairSlice::all, cfg);
      pt.aucc = aucc(pairs);
    } catch (const std::exception&) {
      pt.failed = true;  // recorded on the curve, excluded from the argmax
    }
    if (!pt.failed && pt.aucc > best) {
      best = pt.aucc;
      res.k_star = k;  // strict improvement only: ties resolve to smaller k
    }
    res.curve.push_back(pt);
  }
  if (best < 0) throw data_error("select-k: every k in the range failed");
  return res;
}

}  // namespace facroc
