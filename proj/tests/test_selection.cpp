#include <random>
#include <vector>

#include "doctest.h"
#include "facroc/common.hpp"
#include "facroc/selection.hpp"

using namespace facroc;

namespace {

FeatureMatrix three_blobs(std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> noise(0.0, 0.8);
  std::vector<std::pair<double, double>> centres = {{0, 0}, {14, 0}, {0, 14}};
  FeatureMatrix X;
  X.n = 90;
  X.d = 2;
  X.values.resize(X.n * 2);
  X.groups.resize(X.n);
  for (std::size_t i = 0; i < X.n; ++i) {
    const auto& c = centres[i / 30];
    X.values[i * 2] = c.first + noise(g);
    X.values[i * 2 + 1] = c.second + noise(g);
    X.groups[i] = i % 2 ? 1 : 0;
  }
  return X;
}

}  // namespace

TEST_CASE("selection finds the planted cluster count") {
  FeatureMatrix X = three_blobs(19);
  SelectKResult r = select_k(X, "kmeans", 2, 6, 42);
  CHECK(r.k_star == 3);
  REQUIRE(r.curve.size() == 5);
  for (std::size_t i = 0; i < r.curve.size(); ++i) {
    CHECK(r.curve[i].k == static_cast<int>(i) + 2);
    CHECK(!r.curve[i].failed);
    CHECK(r.curve[i].aucc > 0.0);
    CHECK(r.curve[i].aucc <= 1.0);
  }
}

TEST_CASE("a singleton sweep range returns that k") {
  FeatureMatrix X = three_blobs(23);
  SelectKResult r = select_k(X, "kmeans", 3, 3, 7);
  CHECK(r.k_star == 3);
  REQUIRE(r.curve.size() == 1);
  CHECK(r.curve[0].k == 3);
}

TEST_CASE("an inverted sweep range is rejected") {
  FeatureMatrix X = three_blobs(29);
  CHECK_THROWS_AS(select_k(X, "kmeans", 5, 2, 1), usage_error);
}

TEST_CASE("an unknown model name fails the whole sweep") {
  FeatureMatrix X = three_blobs(31);
  CHECK_THROWS_AS(select_k(X, "no-such-model", 2, 4, 1), data_error);
}

TEST_CASE("the sweep is deterministic for a fixed seed") {
  FeatureMatrix X = three_blobs(37);
  SelectKResult a = select_k(X, "kmeans", 2, 5, 11);
  SelectKResult b = select_k(X, "kmeans", 2, 5, 11);
  CHECK(a.k_star == b.k_star);
  REQUIRE(a.curve.size() == b.curve.size());
  for (std::size_t i = 0; i < a.curve.size(); ++i)
    CHECK(a.curve[i].aucc == b.curve[i].aucc);
}
