#include "facroc/fairness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "facroc/common.hpp"

namespace facroc {

double cluster_balance(const std::vector<int>& labels,
                       const std::vector<std::uint8_t>& groups, int cluster) {
  std::size_t np = 0, npbar = 0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == cluster) (groups[i] ? np : npbar)++;
  if (np == 0 || npbar == 0) return 0.0;  // one-group cluster
  double a = static_cast<double>(np), b = static_cast<double>(npbar);
  return std::min(a / b, b / a);
}

double clustering_balance(const std::vector<int>& labels,
                          const std::vector<std::uint8_t>& groups) {
  std::vector<int> seen;
  for (int l : labels)
    if (std::find(seen.begin(), seen.end(), l) == seen.end()) seen.push_back(l);
  double best = 1.0;
  for (int c : seen) best = std::min(best, cluster_balance(labels, groups, c));
  return best;
}

std::vector<std::size_t> cluster_medoids(const DistanceMatrix& D,
                                         const std::vector<int>& labels, int k) {
  std::vector<std::vector<std::size_t>> members(k);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= k) throw data_error("label out of range");
    members[labels[i]].push_back(i);
  }
  std::vector<std::size_t> medoids(k, 0);
  for (int c = 0; c < k; ++c) {
    if (members[c].empty()) throw data_error("empty cluster in medoid computation");
    double best = kInf;
    for (std::size_t i : members[c]) {
      double s = 0;
      for (std::size_t j : members[c]) s += D.at(i, j);
      if (s < best) {
        best = s;
        medoids[c] = i;
      }
    }
  }
  return medoids;
}

namespace {

// Ratio D_i / d(i, y) with the degenerate cases pinned: a coincident candidate
// (d = 0) offers infinite improvement unless the point already sits on its
// centre (0/0 counts as no improvement).
double improvement_ratio(double Di, double d) {
  if (d == 0.0) return Di > 0.0 ? kInf : 0.0;
  return Di / d;
}

template <typename DistFn>
AuditResult audit_core(std::size_t n, int k, const std::vector<double>& Di,
                       const std::vector<std::size_t>& candidates, DistFn&& dist) {
  std::size_t g = (n + static_cast<std::size_t>(k) - 1) / static_cast<std::size_t>(k);
  AuditResult res;
  res.rho = -1.0;
  std::vector<double> ratios(n);
  for (std::size_t y : candidates) {
    for (std::size_t i = 0; i < n; ++i)
      ratios[i] = improvement_ratio(Di[i], dist(i, y));
    // g-th largest ratio: the best blocking coalition takes the top g.
    std::nth_element(ratios.begin(), ratios.begin() + (g - 1), ratios.end(),
                     std::greater<double>());
    double rho_y = ratios[g - 1];
    if (rho_y > res.rho) {
      res.rho = rho_y;
      res.witness_centre = y;
    }
  }
  return res;
}

}  // namespace

AuditResult proportionality_audit(const DistanceMatrix& D,
                                  const std::vector<int>& labels, int k) {
  const std::size_t n = D.n;
  if (k < 1 || labels.size() != n) throw data_error("audit: bad inputs");
  auto medoids = cluster_medoids(D, labels, k);
  std::vector<double> Di(n);
  for (std::size_t i = 0; i < n; ++i) Di[i] = D.at(i, medoids[labels[i]]);
  std::vector<std::size_t> ys(n);
  std::iota(ys.begin(), ys.end(), 0);
  return audit_core(n, k, Di, ys,
                    [&D](std::size_t i, std::size_t y) { return D.at(i, y); });
}

AuditResult proportionality_audit(const FeatureMatrix& X,
                                  const std::vector<int>& labels, int k,
                                  std::size_t candidate_sample, std::uint64_t seed) {
  const std::size_t n = X.n;
  if (k < 1 || labels.size() != n) throw data_error("audit: bad inputs");

  // Approximate medoid: the member nearest its cluster's mean.
  std::vector<std::vector<double>> means(k, std::vector<double>(X.d, 0.0));
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    int c = labels[i];
    if (c < 0 || c >= k) throw data_error("label out of range");
    for (std::size_t j = 0; j < X.d; ++j) means[c][j] += X.at(i, j);
    counts[c]++;
  }
  for (int c = 0; c < k; ++c) {
    if (counts[c] == 0) throw data_error("empty cluster in medoid computation");
    for (double& v : means[c]) v /= static_cast<double>(counts[c]);
  }
  std::vector<std::size_t> medoids(k, 0);
  std::vector<double> best(k, kInf);
  for (std::size_t i = 0; i < n; ++i) {
    int c = labels[i];
    double s = 0;
    for (std::size_t j = 0; j < X.d; ++j) {
      double diff = X.at(i, j) - means[c][j];
      s += diff * diff;
    }
    if (s < best[c]) {
      best[c] = s;
      medoids[c] = i;
    }
  }

  std::vector<double> Di(n);
  for (std::size_t i = 0; i < n; ++i)
    Di[i] = point_distance(X, i, medoids[labels[i]]);

  std::vector<std::size_t> ys;
  if (candidate_sample >= n) {
    ys.resize(n);
    std::iota(ys.begin(), ys.end(), 0);
  } else {
    // Seeded partial Fisher-Yates draw of distinct candidates.
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::mt19937_64 rng(mix_seed(seed, 0xa0d17ULL));
    for (std::size_t i = 0; i < candidate_sample; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, n - 1);
      std::swap(all[i], all[pick(rng)]);
    }
    ys.assign(all.begin(), all.begin() + candidate_sample);
    std::sort(ys.begin(), ys.end());
  }

  AuditResult res = audit_core(n, k, Di, ys, [&X](std::size_t i, std::size_t y) {
    return point_distance(X, i, y);
  });
  res.approximate = candidate_sample < n;
  return res;
}

double silhouette(const DistanceMatrix& D, const std::vector<int>& labels, int k) {
  const std::size_t n = D.n;
  if (labels.size() != n) throw data_error("silhouette: labels length mismatch");
  if (k < 2) return 0.0;
  std::vector<std::size_t> counts(k, 0);
  for (int l : labels) {
    if (l < 0 || l >= k) throw data_error("label out of range");
    counts[l]++;
  }
  double total = 0.0;
  std::vector<double> sums(k);
  for (std::size_t i = 0; i < n; ++i) {
    int ci = labels[i];
    if (counts[ci] <= 1) continue;  // singleton scores 0
    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) sums[labels[j]] += D.at(i, j);
    double a = sums[ci] / static_cast<double>(counts[ci] - 1);
    double b = kInf;
    for (int c = 0; c < k; ++c)
      if (c != ci && counts[c] > 0)
        b = std::min(b, sums[c] / static_cast<double>(counts[c]));
    double denom = std::max(a, b);
    if (denom > 0) total += (b - a) / denom;
  }
  return total / static_cast<double>(n);
}

double silhouette_sampled(const FeatureMatrix& X, const std::vector<int>& labels,
                          int k, std::size_t sample, std::uint64_t seed) {
  const std::size_t n = X.n;
  if (labels.size() != n) throw data_error("silhouette: labels length mismatch");
  if (k < 2) return 0.0;
  std::vector<std::size_t> counts(k, 0);
  for (int l : labels) {
    if (l < 0 || l >= k) throw data_error("label out of range");
    counts[l]++;
  }
  std::vector<std::size_t> pts(n);
  std::iota(pts.begin(), pts.end(), 0);
  if (sample < n) {
    std::mt19937_64 rng(mix_seed(seed, 0x51ULL));
    for (std::size_t i = 0; i < sample; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, n - 1);
      std::swap(pts[i], pts[pick(rng)]);
    }
    pts.resize(sample);
  }
  double total = 0.0;
  std::vector<double> sums(k);
  for (std::size_t i : pts) {
    int ci = labels[i];
    if (counts[ci] <= 1) continue;
    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) sums[labels[j]] += point_distance(X, i, j);
    double a = sums[ci] / static_cast<double>(counts[ci] - 1);
    double b = kInf;
    for (int c = 0; c < k; ++c)
      if (c != ci && counts[c] > 0)
        b = std::min(b, sums[c] / static_cast<double>(counts[c]));
    double denom = std::max(a, b);
    if (denom > 0) total += (b - a) / denom;
  }
  return total / static_cast<double>(pts.size());
}

}  // namespace facroc
