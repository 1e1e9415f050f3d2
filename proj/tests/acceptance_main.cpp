// Acceptance gate: every numbered requirement below prints exactly one
// PASS/FAIL line. The process exits non-zero if any check fails. Tolerances
// are pinned here, next to the checks that use them.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "facroc/cluster.hpp"
#include "facroc/common.hpp"
#include "facroc/evaluate.hpp"
#include "facroc/fairclust.hpp"
#include "facroc/fairness.hpp"
#include "facroc/metricspace.hpp"
#include "facroc/oracles.hpp"
#include "facroc/roceval.hpp"
#include "facroc/selection.hpp"

using namespace facroc;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 42;

const std::vector<std::string>& dataset_names() {
  static const std::vector<std::string> names = {
      "german", "student_mat", "student_por", "compas", "creditcard", "adult"};
  return names;
}

std::map<std::string, FeatureMatrix>& dataset_cache() {
  static std::map<std::string, FeatureMatrix> cache;
  return cache;
}

const FeatureMatrix& dataset(const std::string& name) {
  auto& cache = dataset_cache();
  auto it = cache.find(name);
  if (it == cache.end())
    it = cache.emplace(name, load_dataset(resolve_schema(name))).first;
  return it->second;
}

std::string suite_detail(const oracle::SuiteResult& r) {
  std::string s = std::to_string(r.passed) + " passed, " +
                  std::to_string(r.failed) + " failed";
  if (!r.failures.empty()) s += "; first: " + r.failures.front();
  return s;
}

// Random grouped instance for decomposition-cost comparisons: minority points
// listed first, sized so the 0.4 balance target is feasible.
FeatureMatrix cost_instance(std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::uniform_int_distribution<std::size_t> major_n(40, 120);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  std::size_t n_major = major_n(g);
  std::size_t lo = (n_major * 2 + 4) / 5;  // ceil(0.4 * n_major)
  std::uniform_int_distribution<std::size_t> minor_n(lo, n_major);
  std::size_t n_minor = minor_n(g);
  FeatureMatrix X;
  X.n = n_minor + n_major;
  X.d = 3;
  X.values.resize(X.n * 3);
  X.groups.resize(X.n);
  for (std::size_t i = 0; i < X.n; ++i) {
    for (std::size_t j = 0; j < 3; ++j) X.values[i * 3 + j] = coord(g);
    X.groups[i] = i < n_minor ? 1 : 0;
  }
  return X;
}

std::vector<int> labels_of(const FairletDecomposition& dec, std::size_t n) {
  std::vector<int> labels(n, -1);
  for (std::size_t f = 0; f < dec.fairlets.size(); ++f)
    for (std::size_t p : dec.fairlets[f]) labels[p] = static_cast<int>(f);
  return labels;
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

using Body = std::function<Outcome()>;

Outcome check_1() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  oracle::SuiteResult r = oracle::run_suite("auc", kSeed);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
  if (!r.ok() || r.passed < 200) o.fail(suite_detail(r));
  if (secs >= 5.0) o.fail("runtime " + format_fixed(secs, 2) + "s, budget 5s");
  return o;
}

Outcome check_2() {
  Outcome o;
  oracle::SuiteResult r = oracle::run_suite("facroc", kSeed);
  if (!r.ok() || r.passed < 100) o.fail(suite_detail(r));
  return o;
}

Outcome check_3() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  oracle::SuiteResult r = oracle::run_suite("audit", kSeed);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
  if (!r.ok()) o.fail(suite_detail(r));
  if (secs >= 30.0) o.fail("runtime " + format_fixed(secs, 2) + "s, budget 30s");
  return o;
}

Outcome check_4() {
  Outcome o;
  oracle::SuiteResult r = oracle::run_suite("balance", kSeed);
  if (!r.ok() || r.passed < 20) o.fail(suite_detail(r));
  return o;
}

Outcome check_5() {
  Outcome o;
  oracle::SuiteResult r = oracle::run_suite("fairlet", kSeed);
  if (!r.ok()) o.fail(suite_detail(r));

  // Approximate decomposition may not beat the exact one: 50 pinned random
  // instances, n <= 200, target 0.4, costs compared at 1e-9 slack.
  for (int t = 0; t < 50; ++t) {
    FeatureMatrix X = cost_instance(mix_seed(kSeed, 0xC0500 + t));
    DistanceMatrix D = distance_matrix(X);
    FairletDecomposition exact = fairlet_decompose(D, X.groups, 0.4);
    FairletDecomposition scal =
        scalable_fairlet_decompose(X, X.groups, 0.4, mix_seed(kSeed, t));
    double ce = decomposition_cost(D, exact);
    double cs = decomposition_cost(D, scal);
    if (cs < ce - 1e-9) {
      o.fail("instance " + std::to_string(t) + ": approximate cost " +
             format_fixed(cs, 6) + " beat exact cost " + format_fixed(ce, 6));
      break;
    }
  }

  // Every dataset: every fairlet and every final cluster holds balance 0.4.
  for (const std::string& name : dataset_names()) {
    const FeatureMatrix& X = dataset(name);
    bool dense = X.n <= kDenseLimit;
    DistanceMatrix D;
    if (dense) D = distance_matrix(X);

    auto verify = [&](const FairletDecomposition& dec, const std::string& how) {
      std::vector<int> fl = labels_of(dec, X.n);
      double worst_fairlet = clustering_balance(fl, X.groups);
      if (worst_fairlet < 0.4 - 1e-12)
        o.fail(name + " " + how + ": fairlet balance " +
               format_fixed(worst_fairlet, 4));
      ClusterResult cl = dense ? fairlet_cluster(dec, D, 2, kSeed)
                               : fairlet_cluster(dec, X, 2, kSeed);
      double cb = clustering_balance(cl.labels, X.groups);
      if (cb < 0.4 - 1e-12)
        o.fail(name + " " + how + ": cluster balance " + format_fixed(cb, 4));
    };

    verify(scalable_fairlet_decompose(X, X.groups, 0.4, kSeed), "approximate");
    if (dense) verify(fairlet_decompose(D, X.groups, 0.4), "matched");
  }
  return o;
}

Outcome check_6() {
  Outcome o;
  oracle::SuiteResult r = oracle::run_suite("silhouette", kSeed);
  if (!r.ok()) o.fail(suite_detail(r));
  return o;
}

Outcome check_7() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  oracle::SuiteResult r = oracle::run_suite("selectk", kSeed);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
  if (!r.ok()) o.fail(suite_detail(r));
  if (secs >= 60.0) o.fail("runtime " + format_fixed(secs, 2) + "s, budget 60s");
  return o;
}

std::map<std::string, EvaluationReport> evaluate_all(const std::string& name,
                                                     int k) {
  std::map<std::string, EvaluationReport> out;
  for (const std::string& model : model_names()) {
    EvaluateOptions opt;
    opt.k = k;
    opt.seed = kSeed;
    out.emplace(model, evaluate_model(dataset(name), name, model, opt));
  }
  return out;
}

Outcome check_8() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  auto rep = evaluate_all("german", 2);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();

  double bal_kmeans = rep.at("kmeans").balance;
  for (const std::string& m : {std::string("fairlet"), std::string("scalable")}) {
    double b = rep.at(m).balance;
    if (b < 0.4)
      o.fail(m + " balance " + format_fixed(b, 4) + " below 0.4");
    if (b <= bal_kmeans)
      o.fail(m + " balance " + format_fixed(b, 4) + " not above kmeans " +
             format_fixed(bal_kmeans, 4));
  }

  double aucc_kmeans = rep.at("kmeans").aucc;
  for (const std::string& m :
       {std::string("fairlet"), std::string("scalable"), std::string("proportional")}) {
    if (aucc_kmeans <= rep.at(m).aucc)
      o.fail("kmeans aucc " + format_fixed(aucc_kmeans, 4) + " not above " + m +
             " " + format_fixed(rep.at(m).aucc, 4));
  }

  double prop_max = -kInf;
  for (const auto& [m, r] : rep) prop_max = std::max(prop_max, r.proportionality);
  if (rep.at("proportional").proportionality < prop_max)
    o.fail("proportional model audit " +
           format_fixed(rep.at("proportional").proportionality, 4) +
           " below the maximum " + format_fixed(prop_max, 4));

  if (secs >= 60.0) o.fail("runtime " + format_fixed(secs, 2) + "s, budget 60s");
  return o;
}

Outcome check_9() {
  Outcome o;
  auto rep = evaluate_all("student_mat", 9);
  double fk = rep.at("kmeans").facroc;
  for (const auto& [m, r] : rep) {
    if (m == "kmeans") continue;
    if (fk > r.facroc)
      o.fail("kmeans " + format_fixed(fk, 4) + " above " + m + " " +
             format_fixed(r.facroc, 4));
  }
  return o;
}

Outcome check_10() {
  Outcome o;
  const FeatureMatrix& X = dataset("creditcard");
  KMeansConfig cfg;
  cfg.k = 2;
  cfg.seed = kSeed;
  ClusterResult cl = kmeans(X, cfg);
  double lo = kInf, hi = -kInf;
  for (std::uint64_t s = 1; s <= 5; ++s) {
    SamplerConfig sc;
    sc.sample_size = 2'000'000;
    sc.seed = s;
    ScoredPairSet pairs = scored_pairs(X, cl.labels, PairSlice::all, sc);
    if (!pairs.sampled) {
      o.fail("pair sampling did not engage");
      return o;
    }
    double a = aucc(pairs);
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  double range = hi - lo;
  if (range >= 0.005)
    o.fail("aucc range " + format_fixed(range, 6) + " across 5 sampling seeds");
  else
    o.detail = "range " + format_fixed(range, 6);
  return o;
}

}  // namespace

int main() {
  if (!std::getenv("FACROC_DATA_DIR")) {
    fs::path dir = fs::temp_directory_path() / "facroc_acceptance_data";
    fs::create_directories(dir);
    setenv("FACROC_DATA_DIR", dir.c_str(), 1);
  }

  struct Criterion {
    int id;
    std::string label;
    Body body;
  };
  const std::vector<Criterion> criteria = {
      {1, "curve AUC equals the half-credit rank statistic (200 instances, 1e-9, under 5s)",
       check_1},
      {2, "exact area between group curves: grid quadrature 1e-6, swap symmetry 1e-12, "
          "zero-crossing and identical-multiset identities",
       check_2},
      {3, "audited rho equals exhaustive coalition enumeration (under 30s)", check_3},
      {4, "balance fixtures match direct counting exactly", check_4},
      {5, "fairlets and final clusters hold balance 0.4 on six datasets and random "
          "instances; approximate cost never beats exact",
       check_5},
      {6, "silhouette and distances match naive recomputation (1e-9)", check_6},
      {7, "four planted blobs recovered in at least 18 of 20 sweeps (under 60s)",
       check_7},
      {8, "german, k=2: fair balance above kmeans and 0.4; kmeans aucc above fair "
          "models; capture model tops the audit (under 60s)",
       check_8},
      {9, "student_mat, k=9: kmeans attains the smallest area between group curves",
       check_9},
      {10, "creditcard: sampled aucc range across 5 seeds below 0.005", check_10},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.body();
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string line = (out.pass ? "PASS" : "FAIL");
    line += " criterion " + std::to_string(c.id) + ": " + c.label;
    if (!out.detail.empty()) line += " [" + out.detail + "]";
    line += " (" + format_fixed(secs, 2) + "s)";
    std::printf("%s\n", line.c_str());
    std::fflush(stdout);
    failures += out.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
