#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "facroc/common.hpp"
#include "facroc/fairclust.hpp"
#include "facroc/fairness.hpp"

using namespace facroc;

namespace {

// 1-D instance: minority (group 1) points first, then majority.
struct GroupedInstance {
  FeatureMatrix X;
  std::vector<std::uint8_t> groups;
  DistanceMatrix D;
};

GroupedInstance grouped_line(std::size_t n_minor, std::size_t n_major,
                             std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(0.0, 50.0);
  GroupedInstance inst;
  inst.X.n = n_minor + n_major;
  inst.X.d = 1;
  inst.X.values.resize(inst.X.n);
  inst.X.groups.resize(inst.X.n);
  for (std::size_t i = 0; i < inst.X.n; ++i) {
    inst.X.values[i] = u(g);
    inst.X.groups[i] = i < n_minor ? 1 : 0;
  }
  inst.groups.assign(inst.X.groups.begin(), inst.X.groups.end());
  inst.D = distance_matrix(inst.X);
  return inst;
}

std::vector<int> fairlet_labels(const FairletDecomposition& dec, std::size_t n) {
  std::vector<int> labels(n, -1);
  for (std::size_t f = 0; f < dec.fairlets.size(); ++f)
    for (std::size_t p : dec.fairlets[f]) labels[p] = static_cast<int>(f);
  return labels;
}

void check_is_partition(const FairletDecomposition& dec, std::size_t n) {
  std::vector<int> seen(n, 0);
  for (const auto& f : dec.fairlets) {
    CHECK(!f.empty());
    for (std::size_t p : f) {
      REQUIRE(p < n);
      seen[p]++;
    }
  }
  CHECK(std::count(seen.begin(), seen.end(), 1) == static_cast<long>(n));
}

}  // namespace

TEST_CASE("balance targets reduce to smallest integer compositions") {
  CHECK(balance_ratio(0.4) == std::make_pair(2, 5));
  CHECK(balance_ratio(0.5) == std::make_pair(1, 2));
  CHECK(balance_ratio(1.0) == std::make_pair(1, 1));
  CHECK(balance_ratio(1.0 / 3.0) == std::make_pair(1, 3));
  CHECK(balance_ratio(0.25) == std::make_pair(1, 4));
  CHECK_THROWS_AS(balance_ratio(0.0), usage_error);
  CHECK_THROWS_AS(balance_ratio(1.5), usage_error);
  CHECK_THROWS_AS(balance_ratio(0.23), usage_error);  // needs r = 100
}

TEST_CASE("decomposition refuses datasets below the balance target") {
  GroupedInstance inst = grouped_line(2, 9, 17);  // balance 2/9 < 0.4
  CHECK_THROWS_AS(fairlet_decompose(inst.D, inst.groups, 0.4),
                  infeasible_fairness_error);
  CHECK_THROWS_AS(scalable_fairlet_decompose(inst.X, inst.groups, 0.4, 1),
                  infeasible_fairness_error);
}

TEST_CASE("half-balance targets produce (1,2) stars") {
  GroupedInstance inst = grouped_line(2, 4, 5);
  FairletDecomposition dec = fairlet_decompose(inst.D, inst.groups, 0.5);
  CHECK(dec.b == 1);
  CHECK(dec.r == 2);
  check_is_partition(dec, inst.X.n);
  REQUIRE(dec.fairlets.size() == 2);
  for (const auto& f : dec.fairlets) {
    REQUIRE(f.size() == 3);
    int minor = 0;
    for (std::size_t p : f) minor += inst.groups[p] == 1;
    CHECK(minor == 1);  // one minority point hosts two majority points
  }
  REQUIRE(dec.centers.size() == 2);
  for (std::size_t c = 0; c < 2; ++c) {
    bool inside = std::count(dec.fairlets[c].begin(), dec.fairlets[c].end(),
                             dec.centers[c]) == 1;
    CHECK(inside);
  }
  CHECK(decomposition_cost(inst.D, dec) == doctest::Approx(dec.cost).epsilon(1e-12));
}

TEST_CASE("perfectly balanced data pairs up under t = 1") {
  GroupedInstance inst = grouped_line(5, 5, 9);
  FairletDecomposition dec = fairlet_decompose(inst.D, inst.groups, 1.0);
  CHECK(dec.fairlets.size() == 5);
  for (const auto& f : dec.fairlets) {
    REQUIRE(f.size() == 2);
    CHECK(static_cast<int>(inst.groups[f[0]]) + inst.groups[f[1]] == 1);
  }
}

TEST_CASE("general targets batch with every fairlet at or above the target") {
  // 5 minority / 10 majority at t = 0.4 = 2/5: remainders force uneven
  // fairlets, but each must still satisfy the ratio on its own.
  GroupedInstance inst = grouped_line(5, 10, 21);
  FairletDecomposition dec = fairlet_decompose(inst.D, inst.groups, 0.4);
  check_is_partition(dec, inst.X.n);
  std::vector<int> labels = fairlet_labels(dec, inst.X.n);
  for (std::size_t f = 0; f < dec.fairlets.size(); ++f)
    CHECK(cluster_balance(labels, inst.groups, static_cast<int>(f)) >=
          0.4 - 1e-12);
  CHECK(clustering_balance(labels, inst.groups) >= 0.4 - 1e-12);
}

TEST_CASE("scalable decomposition meets the target and partitions the data") {
  GroupedInstance inst = grouped_line(30, 60, 33);
  inst.X.d = 1;
  FairletDecomposition dec =
      scalable_fairlet_decompose(inst.X, inst.groups, 0.4, 7);
  check_is_partition(dec, inst.X.n);
  std::vector<int> labels = fairlet_labels(dec, inst.X.n);
  CHECK(clustering_balance(labels, inst.groups) >= 0.4 - 1e-12);

  FairletDecomposition again =
      scalable_fairlet_decompose(inst.X, inst.groups, 0.4, 7);
  CHECK(again.fairlets == dec.fairlets);
  CHECK(again.centers == dec.centers);

  SUBCASE("coincident points do not break the grid hierarchy") {
    FeatureMatrix Y;
    Y.n = 9;
    Y.d = 2;
    Y.values.assign(18, 1.25);
    Y.groups = {1, 1, 1, 0, 0, 0, 0, 0, 0};
    std::vector<std::uint8_t> groups(Y.groups.begin(), Y.groups.end());
    FairletDecomposition d2 = scalable_fairlet_decompose(Y, groups, 0.5, 3);
    check_is_partition(d2, Y.n);
    std::vector<int> labels2 = fairlet_labels(d2, Y.n);
    CHECK(clustering_balance(labels2, groups) >= 0.5 - 1e-12);
  }
}

TEST_CASE("phase two clusters whole fairlets and keeps the balance target") {
  GroupedInstance inst = grouped_line(12, 24, 41);
  FairletDecomposition dec = fairlet_decompose(inst.D, inst.groups, 0.5);
  ClusterResult r = fairlet_cluster(dec, inst.D, 3, 42);
  CHECK(r.k == 3);
  CHECK(r.model == "fairlet");
  // Fairlets move as blocks: members of one fairlet share a final label.
  for (const auto& f : dec.fairlets)
    for (std::size_t p : f) CHECK(r.labels[p] == r.labels[f[0]]);
  CHECK(clustering_balance(r.labels, inst.groups) >= 0.5 - 1e-12);

  ClusterResult lazy = fairlet_cluster(dec, inst.X, 3, 42);
  CHECK(lazy.labels == r.labels);

  SUBCASE("more clusters than fairlets is rejected") {
    GroupedInstance tiny = grouped_line(2, 2, 8);
    FairletDecomposition d2 = fairlet_decompose(tiny.D, tiny.groups, 1.0);
    REQUIRE(d2.fairlets.size() == 2);
    CHECK_THROWS_AS(fairlet_cluster(d2, tiny.D, 3, 1), usage_error);
  }
}

TEST_CASE("exact matching decomposition is never beaten by hand pairings") {
  // 1-D, t = 1: optimal pairing is computable by scanning; cost must match.
  FeatureMatrix X;
  X.n = 6;
  X.d = 1;
  X.values = {0.0, 1.0, 8.0, 9.0, 20.0, 21.0};
  X.groups = {1, 0, 1, 0, 1, 0};
  std::vector<std::uint8_t> groups(X.groups.begin(), X.groups.end());
  DistanceMatrix D = distance_matrix(X);
  FairletDecomposition dec = fairlet_decompose(D, groups, 1.0);
  // Best stars: (0,1), (2,3), (4,5), each cost 1.
  CHECK(dec.cost == doctest::Approx(3.0).epsilon(1e-12));
  std::set<std::set<std::size_t>> got;
  for (const auto& f : dec.fairlets) got.insert({f.begin(), f.end()});
  std::set<std::set<std::size_t>> want = {{0, 1}, {2, 3}, {4, 5}};
  CHECK(got == want);
}
