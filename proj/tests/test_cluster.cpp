#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "doctest.h"
#include "facroc/cluster.hpp"
#include "facroc/common.hpp"
#include "facroc/fairclust.hpp"

using namespace facroc;

namespace {

FeatureMatrix blobs(const std::vector<std::pair<double, double>>& centres,
                    std::size_t per, double sd, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> noise(0.0, sd);
  FeatureMatrix X;
  X.n = centres.size() * per;
  X.d = 2;
  X.values.resize(X.n * 2);
  X.groups.resize(X.n);
  for (std::size_t i = 0; i < X.n; ++i) {
    const auto& c = centres[i / per];
    X.values[i * 2] = c.first + noise(g);
    X.values[i * 2 + 1] = c.second + noise(g);
    X.groups[i] = i % 2 ? 1 : 0;
  }
  return X;
}

bool partitions_agree(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
  return true;
}

// Straightforward cubic-time agglomeration used as the reference for the
// cached implementation: full pair scan each round, same linkage update.
struct NaiveMerge {
  int a, b;
  double height;
};

std::vector<NaiveMerge> naive_agglomerate(const FeatureMatrix& X, Linkage link) {
  const std::size_t n = X.n;
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  std::vector<double> size(n, 1.0);
  std::vector<bool> alive(n, true);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double d = point_distance(X, i, j);
      w[i][j] = link == Linkage::ward ? d * d : d;
    }
  std::vector<NaiveMerge> steps;
  for (std::size_t round = 1; round < n; ++round) {
    std::size_t ba = 0, bb = 0;
    double best = kInf;
    bool found = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!alive[j]) continue;
        if (!found || w[i][j] < best ||
            (w[i][j] == best && (i < ba || (i == ba && j < bb)))) {
          best = w[i][j];
          ba = i;
          bb = j;
          found = true;
        }
      }
    }
    double height = link == Linkage::ward ? std::sqrt(best) : best;
    steps.push_back({static_cast<int>(ba), static_cast<int>(bb), height});
    for (std::size_t o = 0; o < n; ++o) {
      if (!alive[o] || o == ba || o == bb) continue;
      double updated;
      if (link == Linkage::ward) {
        double sa = size[ba], sb = size[bb], so = size[o];
        double tot = sa + sb + so;
        updated = ((sa + so) * w[ba][o] + (sb + so) * w[bb][o] - so * best) / tot;
      } else if (link == Linkage::average) {
        updated = (size[ba] * w[ba][o] + size[bb] * w[bb][o]) / (size[ba] + size[bb]);
      } else {
        updated = std::max(w[ba][o], w[bb][o]);
      }
      w[ba][o] = w[o][ba] = updated;
    }
    size[ba] += size[bb];
    alive[bb] = false;
  }
  return steps;
}

}  // namespace

TEST_CASE("k-means recovers well-separated blobs and labels by first appearance") {
  FeatureMatrix X = blobs({{0, 0}, {20, 0}, {0, 20}}, 30, 1.0, 11);
  KMeansConfig cfg;
  cfg.k = 3;
  cfg.seed = 5;
  ClusterResult r = kmeans(X, cfg);
  REQUIRE(r.labels.size() == X.n);
  CHECK(r.k == 3);
  CHECK(r.labels[0] == 0);  // relabeled in order of first appearance
  std::vector<int> truth(X.n);
  for (std::size_t i = 0; i < X.n; ++i) truth[i] = static_cast<int>(i / 30);
  CHECK(partitions_agree(r.labels, truth));
  CHECK(r.objective > 0.0);

  ClusterResult again = kmeans(X, cfg);
  CHECK(again.labels == r.labels);
  CHECK(again.objective == r.objective);
}

TEST_CASE("k-means handles k equal to the point count") {
  FeatureMatrix X = blobs({{0, 0}, {5, 5}}, 2, 0.2, 3);
  KMeansConfig cfg;
  cfg.k = 4;
  cfg.seed = 1;
  ClusterResult r = kmeans(X, cfg);
  std::set<int> distinct(r.labels.begin(), r.labels.end());
  CHECK(distinct.size() == 4);
  CHECK(r.objective == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("complete linkage splits two obvious groups") {
  FeatureMatrix X;
  X.n = 4;
  X.d = 1;
  X.values = {0.0, 1.0, 10.0, 11.0};
  X.groups = {1, 0, 1, 0};
  HierarchicalConfig cfg;
  cfg.k = 2;
  cfg.linkage = Linkage::complete;
  ClusterResult r = hierarchical(X, cfg);
  CHECK(r.labels == std::vector<int>{0, 0, 1, 1});
}

TEST_CASE("every linkage reproduces the cubic-time reference on random points") {
  FeatureMatrix X = blobs({{0, 0}, {4, 1}, {2, 6}}, 10, 1.3, 23);
  for (Linkage link : {Linkage::ward, Linkage::average, Linkage::complete}) {
    std::vector<MergeStep> history;
    HierarchicalConfig full;
    full.k = 1;
    full.linkage = link;
    hierarchical(X, full, &history);
    HierarchicalConfig cfg;
    cfg.k = 3;
    cfg.linkage = link;
    ClusterResult r = hierarchical(X, cfg);
    std::vector<NaiveMerge> ref = naive_agglomerate(X, link);
    REQUIRE(history.size() == ref.size());
    for (std::size_t s = 0; s < ref.size(); ++s) {
      CHECK(history[s].a == ref[s].a);
      CHECK(history[s].b == ref[s].b);
      CHECK(history[s].height ==
            doctest::Approx(ref[s].height).epsilon(1e-9));
    }
    // Labels: cut the reference at k=3 via union-find over its merges.
    std::vector<int> parent(X.n);
    for (std::size_t i = 0; i < X.n; ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (std::size_t s = 0; s + 3 < ref.size() + 1; ++s)
      parent[find(ref[s].b)] = find(ref[s].a);
    std::vector<int> ref_labels(X.n);
    for (std::size_t i = 0; i < X.n; ++i) ref_labels[i] = find(static_cast<int>(i));
    CHECK(partitions_agree(r.labels, ref_labels));
  }
}

TEST_CASE("ward merge heights never decrease") {
  FeatureMatrix X = blobs({{0, 0}, {3, 3}}, 12, 1.0, 7);
  std::vector<MergeStep> history;
  HierarchicalConfig cfg;
  cfg.k = 1;
  ClusterResult r = hierarchical(X, cfg, &history);
  REQUIRE(history.size() == X.n - 1);
  for (std::size_t i = 1; i < history.size(); ++i)
    CHECK(history[i].height >= history[i - 1].height - 1e-12);
  CHECK(r.k == 1);
}

TEST_CASE("hierarchical clustering refuses oversized inputs") {
  FeatureMatrix X;
  X.n = kDenseLimit + 1;
  X.d = 1;
  X.values.assign(X.n, 0.0);
  X.groups.assign(X.n, 0);
  X.groups[0] = 1;
  HierarchicalConfig cfg;
  cfg.k = 2;
  CHECK_THROWS_AS(hierarchical(X, cfg), data_error);
}

TEST_CASE("greedy capture opens centres in dense regions and may stop early") {
  FeatureMatrix X;
  X.n = 6;
  X.d = 1;
  // Quarters are exactly representable, so the two triads' opening radii tie
  // exactly and the lower candidate index breaks the tie.
  X.values = {0.0, 0.25, 0.5, 10.0, 10.25, 10.5};
  X.groups = {1, 0, 1, 0, 1, 0};
  DistanceMatrix D = distance_matrix(X);
  ClusterResult r = greedy_capture(D, 2);
  CHECK(r.k == 2);
  CHECK(partitions_agree(r.labels, {0, 0, 0, 1, 1, 1}));
  CHECK(r.labels[0] == 0);  // cluster ids follow opening order

  SUBCASE("coincident points collapse to fewer centres") {
    FeatureMatrix Y;
    Y.n = 4;
    Y.d = 1;
    Y.values = {1.0, 1.0, 1.0, 1.0};
    Y.groups = {1, 0, 1, 0};
    DistanceMatrix Dy = distance_matrix(Y);
    ClusterResult ry = greedy_capture(Dy, 2);
    // The first opening's ball captures everything at radius zero.
    CHECK(ry.k == 1);
    CHECK(ry.labels == std::vector<int>{0, 0, 0, 0});
  }
}

TEST_CASE("greedy capture is deterministic") {
  FeatureMatrix X = blobs({{0, 0}, {6, 2}, {3, 8}}, 15, 1.1, 29);
  DistanceMatrix D = distance_matrix(X);
  ClusterResult a = greedy_capture(D, 3);
  ClusterResult b = greedy_capture(D, 3);
  CHECK(a.labels == b.labels);
  CHECK(a.k == b.k);
}
