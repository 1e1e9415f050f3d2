#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "facroc/common.hpp"
#include "facroc/metricspace.hpp"

using namespace facroc;

namespace {

FeatureMatrix grid_points(std::size_t n, std::size_t d) {
  FeatureMatrix X;
  X.n = n;
  X.d = d;
  X.values.resize(n * d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j)
      X.values[i * d + j] = static_cast<double>((i * 31 + j * 7) % 17) * 0.25;
  X.groups.resize(n);
  for (std::size_t i = 0; i < n; ++i) X.groups[i] = i % 3 == 0 ? 1 : 0;
  return X;
}

}  // namespace

TEST_CASE("distance matrix is symmetric, zero-diagonal, and matches pointwise") {
  FeatureMatrix X = grid_points(12, 3);
  DistanceMatrix D = distance_matrix(X);
  REQUIRE(D.n == 12);
  for (std::size_t i = 0; i < D.n; ++i) {
    CHECK(D.at(i, i) == 0.0);
    for (std::size_t j = 0; j < D.n; ++j) {
      CHECK(D.at(i, j) == D.at(j, i));
      CHECK(D.at(i, j) == doctest::Approx(point_distance(X, i, j)).epsilon(1e-12));
    }
  }
}

TEST_CASE("full enumeration keeps every pair once with negated-distance scores") {
  FeatureMatrix X = grid_points(5, 2);
  DistanceMatrix D = distance_matrix(X);
  std::vector<int> labels{0, 0, 1, 1, 0};
  SamplerConfig cfg;
  ScoredPairSet ps = scored_pairs(D, labels, X.groups, PairSlice::all, cfg);
  CHECK(ps.pairs.size() == 10);
  CHECK_FALSE(ps.sampled);
  CHECK(ps.member_count == 5);
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (const auto& p : ps.pairs) {
    CHECK(p.i < p.j);
    seen.insert({p.i, p.j});
    CHECK(p.score == -D.at(p.i, p.j));
    CHECK((p.same_cluster != 0) == (labels[p.i] == labels[p.j]));
  }
  CHECK(seen.size() == 10);
}

TEST_CASE("group slices keep only pairs whose endpoints both belong") {
  FeatureMatrix X = grid_points(6, 2);
  X.groups = {1, 1, 1, 0, 0, 0};
  DistanceMatrix D = distance_matrix(X);
  std::vector<int> labels{0, 1, 0, 1, 0, 1};
  SamplerConfig cfg;
  ScoredPairSet p = scored_pairs(D, labels, X.groups, PairSlice::group_p, cfg);
  CHECK(p.member_count == 3);
  CHECK(p.pairs.size() == 3);
  for (const auto& pr : p.pairs) {
    CHECK(X.groups[pr.i] == 1);
    CHECK(X.groups[pr.j] == 1);
  }
  ScoredPairSet q = scored_pairs(D, labels, X.groups, PairSlice::group_pbar, cfg);
  CHECK(q.pairs.size() == 3);

  SUBCASE("any-endpoint slicing admits mixed pairs") {
    cfg.any_endpoint = true;
    ScoredPairSet r = scored_pairs(D, labels, X.groups, PairSlice::group_p, cfg);
    // 3 within-group pairs + 9 mixed pairs.
    CHECK(r.pairs.size() == 12);
  }
}

TEST_CASE("the dense and lazy pair builders agree") {
  FeatureMatrix X = grid_points(40, 3);
  DistanceMatrix D = distance_matrix(X);
  std::vector<int> labels(40);
  for (std::size_t i = 0; i < 40; ++i) labels[i] = static_cast<int>(i % 4);
  SamplerConfig cfg;
  for (PairSlice s : {PairSlice::all, PairSlice::group_p, PairSlice::group_pbar}) {
    ScoredPairSet a = scored_pairs(D, labels, X.groups, s, cfg);
    ScoredPairSet b = scored_pairs(X, labels, s, cfg);
    REQUIRE(a.pairs.size() == b.pairs.size());
    for (std::size_t i = 0; i < a.pairs.size(); ++i) {
      CHECK(a.pairs[i].i == b.pairs[i].i);
      CHECK(a.pairs[i].j == b.pairs[i].j);
      CHECK(a.pairs[i].score ==
            doctest::Approx(b.pairs[i].score).epsilon(1e-12));
      CHECK(a.pairs[i].same_cluster == b.pairs[i].same_cluster);
    }
  }
}

TEST_CASE("large slices are subsampled without replacement, deterministically") {
  const std::size_t n = 2100;  // above the full-enumeration limit
  FeatureMatrix X;
  X.n = n;
  X.d = 1;
  X.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) X.values[i] = static_cast<double>(i % 97);
  X.groups.assign(n, 0);
  for (std::size_t i = 0; i < n; i += 2) X.groups[i] = 1;
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i % 5);

  SamplerConfig cfg;
  cfg.sample_size = 1000;
  cfg.seed = 7;
  ScoredPairSet a = scored_pairs(X, labels, PairSlice::all, cfg);
  CHECK(a.sampled);
  CHECK(a.pairs.size() == 1000);
  CHECK(a.member_count == n);
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (const auto& p : a.pairs) {
    CHECK(p.i < p.j);
    CHECK(p.j < n);
    seen.insert({p.i, p.j});
  }
  CHECK(seen.size() == 1000);  // distinct pairs

  ScoredPairSet b = scored_pairs(X, labels, PairSlice::all, cfg);
  REQUIRE(b.pairs.size() == a.pairs.size());
  for (std::size_t i = 0; i < a.pairs.size(); ++i) {
    CHECK(a.pairs[i].i == b.pairs[i].i);
    CHECK(a.pairs[i].j == b.pairs[i].j);
  }

  SUBCASE("a sample covering every pair falls back to full enumeration") {
    SamplerConfig big = cfg;
    big.full_enumeration_limit = 50;
    big.sample_size = n * (n - 1) / 2;
    ScoredPairSet c = scored_pairs(X, labels, PairSlice::all, big);
    CHECK_FALSE(c.sampled);
    CHECK(c.pairs.size() == n * (n - 1) / 2);
  }
}

TEST_CASE("degenerate slices are refused") {
  FeatureMatrix X = grid_points(6, 2);
  DistanceMatrix D = distance_matrix(X);
  SamplerConfig cfg;

  SUBCASE("fewer than two members") {
    X.groups = {1, 0, 0, 0, 0, 0};
    std::vector<int> labels{0, 0, 1, 1, 0, 1};
    CHECK_THROWS_AS(scored_pairs(D, labels, X.groups, PairSlice::group_p, cfg),
                    degenerate_slice_error);
  }
  SUBCASE("all pairs share the outcome") {
    std::vector<int> labels(6, 0);  // everything same-cluster
    CHECK_THROWS_AS(scored_pairs(D, labels, X.groups, PairSlice::all, cfg),
                    degenerate_slice_error);
  }
}
