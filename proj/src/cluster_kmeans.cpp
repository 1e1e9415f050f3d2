#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "facroc/cluster.hpp"
#include "facroc/common.hpp"

namespace facroc {

namespace {

double sq_dist(const FeatureMatrix& X, std::size_t i, const std::vector<double>& c) {
  double s = 0;
  const double* a = X.values.data() + i * X.d;
  for (std::size_t j = 0; j < X.d; ++j) {
    double diff = a[j] - c[j];
    s += diff * diff;
  }
  return s;
}

// k-means++: first centre uniform, then each next centre drawn with
// probability proportional to squared distance from the nearest chosen one.
std::vector<std::vector<double>> seed_centres(const FeatureMatrix& X, int k,
                                              std::mt19937_64& rng) {
  std::vector<std::vector<double>> centres;
  std::uniform_int_distribution<std::size_t> uni(0, X.n - 1);
  std::size_t first = uni(rng);
  centres.emplace_back(X.row(first).begin(), X.row(first).end());
  std::vector<double> d2(X.n);
  for (std::size_t i = 0; i < X.n; ++i) d2[i] = sq_dist(X, i, centres[0]);
  while (static_cast<int>(centres.size()) < k) {
    double total = 0;
    for (double v : d2) total += v;
    std::size_t pick = 0;
    if (total > 0) {
      std::uniform_real_distribution<double> u(0.0, total);
      double r = u(rng), acc = 0;
      pick = X.n - 1;
      for (std::size_t i = 0; i < X.n; ++i) {
        acc += d2[i];
        if (acc >= r) {
          pick = i;
          break;
        }
      }
    } else {
      pick = uni(rng);  // all points coincide with a centre already
    }
    centres.emplace_back(X.row(pick).begin(), X.row(pick).end());
    for (std::size_t i = 0; i < X.n; ++i)
      d2[i] = std::min(d2[i], sq_dist(X, i, centres.back()));
  }
  return centres;
}

struct LloydRun {
  std::vector<int> labels;
  double sse = 0;
};

LloydRun lloyd(const FeatureMatrix& X, int k, std::uint64_t seed, int max_iter,
               double tol) {
  std::mt19937_64 rng(seed);
  auto centres = seed_centres(X, k, rng);
  std::vector<int> labels(X.n, 0);
  std::vector<std::size_t> counts(k);
  std::vector<std::vector<double>> next(k, std::vector<double>(X.d));

  for (int it = 0; it < max_iter; ++it) {
    for (std::size_t i = 0; i < X.n; ++i) {
      double best = sq_dist(X, i, centres[0]);
      int arg = 0;
      for (int c = 1; c < k; ++c) {
        double v = sq_dist(X, i, centres[c]);
        if (v < best) {
          best = v;
          arg = c;
        }
      }
      labels[i] = arg;
    }
    for (int c = 0; c < k; ++c) {
      counts[c] = 0;
      std::fill(next[c].begin(), next[c].end(), 0.0);
    }
    for (std::size_t i = 0; i < X.n; ++i) {
      int c = labels[i];
      counts[c]++;
      const double* row = X.values.data() + i * X.d;
      for (std::size_t j = 0; j < X.d; ++j) next[c][j] += row[j];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] == 0) {
        // Repair: restart the empty centre at the point farthest from the
        // centre currently serving it.
        std::size_t far = 0;
        double best = -1;
        for (std::size_t i = 0; i < X.n; ++i) {
          double v = sq_dist(X, i, centres[labels[i]]);
          if (v > best) {
            best = v;
            far = i;
          }
        }
        next[c].assign(X.row(far).begin(), X.row(far).end());
        counts[c] = 1;
        labels[far] = c;
        continue;
      }
      for (double& v : next[c]) v /= static_cast<double>(counts[c]);
    }
    double shift = 0;
    for (int c = 0; c < k; ++c) {
      double s = 0;
      for (std::size_t j = 0; j < X.d; ++j) {
        double diff = next[c][j] - centres[c][j];
        s += diff * diff;
      }
      shift = std::max(shift, s);
    }
    centres.swap(next);
    if (shift < tol) break;
  }

  // Final assignment against the converged centres, then the objective.
  LloydRun run;
  run.labels.resize(X.n);
  for (std::size_t i = 0; i < X.n; ++i) {
    double best = sq_dist(X, i, centres[0]);
    int arg = 0;
    for (int c = 1; c < k; ++c) {
      double v = sq_dist(X, i, centres[c]);
      if (v < best) {
        best = v;
        arg = c;
      }
    }
    run.labels[i] = arg;
    run.sse += best;
  }
  return run;
}

}  // namespace

ClusterResult kmeans(const FeatureMatrix& X, const KMeansConfig& cfg) {
  if (cfg.k < 1 || static_cast<std::size_t>(cfg.k) > X.n)
    throw usage_error("kmeans: k must be in [1, n]");
  LloydRun best;
  best.sse = kInf;
  for (int r = 0; r < cfg.restarts; ++r) {
    LloydRun run = lloyd(X, cfg.k, mix_seed(cfg.seed, static_cast<std::uint64_t>(r)),
                         cfg.max_iter, cfg.tol);
    if (run.sse < best.sse) best = std::move(run);
  }
  // Guarantee every id in [0, k) occurs: relabel clusters in order of first
  // appearance, then map any gap away (possible only if repair failed).
  std::vector<int> remap(cfg.k, -1);
  int next_id = 0;
  for (int& l : best.labels) {
    if (remap[l] < 0) remap[l] = next_id++;
    l = remap[l];
  }
  ClusterResult res;
  res.labels = std::move(best.labels);
  res.k = next_id;
  res.model = "kmeans";
  res.objective = best.sse;
  res.seed = cfg.seed;
  return res;
}

}  // namespace facroc
