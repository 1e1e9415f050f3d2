#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "facroc/fairness.hpp"
#include "facroc/metricspace.hpp"
#include "facroc/roceval.hpp"

// Deliberately naive reference implementations, kept independent of the fast
// paths they verify. The CLI `oracle` command and the acceptance suite both
// run the checks in here.
namespace facroc::oracle {

// AUC as the half-credit rank statistic: for every (positive, negative) pair
// of scored pairs, credit 1 when the positive outranks the negative, 0.5 on a
// tie. Quadratic in the pair count.
double auc_rank_sum(const ScoredPairSet& pairs);

// Value of the ROC polyline at a false-positive rate, by walking its vertices;
// vertical stretches resolve to the upper value.
double curve_value(const RocCurve& c, double fpr);

// Area between two curves by midpoint quadrature over `cells` uniform cells.
double facroc_grid(const RocCurve& a, const RocCurve& b, std::size_t cells);

// Minimal rho by brute force over every size-ceil(n/k) coalition and every
// candidate centre. Exponential; n <= 20 or so.
double rho_exhaustive(const DistanceMatrix& D, const std::vector<int>& labels,
                      int k);

// Minimum-cost perfect matching between the two groups (equal sizes) by
// exhaustive permutation; group sizes <= 8.
double min_matching_exhaustive(const DistanceMatrix& D,
                               const std::vector<std::uint8_t>& groups);

// Straight double-loop recomputations.
double silhouette_naive(const DistanceMatrix& D, const std::vector<int>& labels,
                        int k);
double distance_naive(const FeatureMatrix& X, std::size_t i, std::size_t j);

// Named check suites (auc, facroc, audit, balance, fairlet, silhouette,
// selectk, all). Each returns pass/fail counts with messages for failures.
struct SuiteResult {
  std::string suite;
  int passed = 0, failed = 0;
  std::vector<std::string> failures;
  bool ok() const { return failed == 0; }
};
std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, std::uint64_t seed);

}  // namespace facroc::oracle
