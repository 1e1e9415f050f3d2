#include "facroc/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>

#include "facroc/common.hpp"
#include "facroc/fairclust.hpp"
#include "facroc/selection.hpp"

namespace facroc::oracle {

namespace {

double ratio_rule(double Di, double d) {
  if (d == 0.0) return Di > 0.0 ? kInf : 0.0;
  return Di / d;
}

}  // namespace

double auc_rank_sum(const ScoredPairSet& pairs) {
  double credit = 0.0;
  std::size_t n_pos = 0, n_neg = 0;
  for (const auto& a : pairs.pairs) {
    if (a.same_cluster) {
      ++n_pos;
      continue;
    }
    ++n_neg;
  }
  for (const auto& p : pairs.pairs) {
    if (!p.same_cluster) continue;
    for (const auto& q : pairs.pairs) {
      if (q.same_cluster) continue;
      if (p.score > q.score) credit += 1.0;
      else if (p.score == q.score) credit += 0.5;
    }
  }
  if (n_pos == 0 || n_neg == 0)
    throw degenerate_slice_error("rank-sum oracle needs both pair outcomes");
  return credit / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

double curve_value(const RocCurve& c, double fpr) {
  const auto& xs = c.fpr;
  if (fpr <= xs.front()) return c.tpr.front();
  if (fpr >= xs.back()) return c.tpr.back();
  // First vertex with x >= fpr.
  std::size_t hi = static_cast<std::size_t>(
      std::lower_bound(xs.begin(), xs.end(), fpr) - xs.begin());
  if (xs[hi] == fpr) {
    // On a vertex or vertical stretch: take the topmost value at this x.
    double top = c.tpr[hi];
    while (hi + 1 < xs.size() && xs[hi + 1] == fpr) top = c.tpr[++hi];
    return top;
  }
  std::size_t lo = hi - 1;
  double t = (fpr - xs[lo]) / (xs[hi] - xs[lo]);
  return c.tpr[lo] + t * (c.tpr[hi] - c.tpr[lo]);
}

double facroc_grid(const RocCurve& a, const RocCurve& b, std::size_t cells) {
  double sum = 0.0;
  for (std::size_t i = 0; i < cells; ++i) {
    double x = (static_cast<double>(i) + 0.5) / static_cast<double>(cells);
    sum += std::abs(curve_value(a, x) - curve_value(b, x));
  }
  return sum / static_cast<double>(cells);
}

double rho_exhaustive(const DistanceMatrix& D, const std::vector<int>& labels,
                      int k) {
  const std::size_t n = D.n;
  if (n > 20) throw usage_error("exhaustive audit limited to 20 points");
  // Own-cluster medoids, smallest index on ties.
  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < n; ++i)
    members[static_cast<std::size_t>(labels[i])].push_back(i);
  std::vector<std::size_t> medoid(static_cast<std::size_t>(k), 0);
  for (int c = 0; c < k; ++c) {
    double best = kInf;
    for (std::size_t cand : members[static_cast<std::size_t>(c)]) {
      double s = 0.0;
      for (std::size_t m : members[static_cast<std::size_t>(c)]) s += D.at(m, cand);
      if (s < best) {
        best = s;
        medoid[static_cast<std::size_t>(c)] = cand;
      }
    }
  }
  std::vector<double> Di(n);
  for (std::size_t i = 0; i < n; ++i)
    Di[i] = D.at(i, medoid[static_cast<std::size_t>(labels[i])]);

  const std::size_t g = (n + static_cast<std::size_t>(k) - 1) /
                        static_cast<std::size_t>(k);
  double rho = 0.0;
  for (std::size_t y = 0; y < n; ++y) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != g) continue;
      double worst = kInf;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) worst = std::min(worst, ratio_rule(Di[i], D.at(i, y)));
      rho = std::max(rho, worst);
    }
  }
  return rho;
}

double min_matching_exhaustive(const DistanceMatrix& D,
                               const std::vector<std::uint8_t>& groups) {
  std::vector<std::size_t> a, b;
  for (std::size_t i = 0; i < groups.size(); ++i)
    (groups[i] ? a : b).push_back(i);
  if (a.size() != b.size())
    throw usage_error("matching oracle needs equal group sizes");
  if (a.size() > 8) throw usage_error("matching oracle limited to 8 per group");
  std::vector<std::size_t> perm(b.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = kInf;
  do {
    double cost = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) cost += D.at(a[i], b[perm[i]]);
    best = std::min(best, cost);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double silhouette_naive(const DistanceMatrix& D, const std::vector<int>& labels,
                        int k) {
  const std::size_t n = D.n;
  if (k < 2) return 0.0;
  std::vector<std::size_t> size(static_cast<std::size_t>(k), 0);
  for (int l : labels) ++size[static_cast<std::size_t>(l)];
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t own = static_cast<std::size_t>(labels[i]);
    if (size[own] <= 1) continue;  // contributes zero
    std::vector<double> sums(static_cast<std::size_t>(k), 0.0);
    for (std::size_t j = 0; j < n; ++j)
      sums[static_cast<std::size_t>(labels[j])] += D.at(i, j);
    double a = sums[own] / static_cast<double>(size[own] - 1);
    double b = kInf;
    for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c) {
      if (c == own || size[c] == 0) continue;
      b = std::min(b, sums[c] / static_cast<double>(size[c]));
    }
    double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;
  }
  return total / static_cast<double>(n);
}

double distance_naive(const FeatureMatrix& X, std::size_t i, std::size_t j) {
  double s = 0.0;
  for (std::size_t f = 0; f < X.d; ++f) {
    double diff = X.at(i, f) - X.at(j, f);
    s += diff * diff;
  }
  return std::sqrt(s);
}

// ------------------------------------------------------------------ suites --

namespace {

struct Checker {
  SuiteResult res;
  void check(bool ok, const std::string& msg) {
    if (ok) {
      ++res.passed;
    } else {
      ++res.failed;
      res.failures.push_back(msg);
    }
  }
};

// Random scored-pair instance with deliberate score ties, both outcomes present.
ScoredPairSet random_pair_set(std::mt19937_64& g, std::size_t lo, std::size_t hi,
                              std::size_t pool_lo, std::size_t pool_hi) {
  std::uniform_int_distribution<std::size_t> size_d(lo, hi);
  std::uniform_int_distribution<std::size_t> pool_d(pool_lo, pool_hi);
  std::uniform_real_distribution<double> val(-5.0, 5.0);
  std::uniform_real_distribution<double> prob(0.25, 0.75);
  const std::size_t n = size_d(g);
  std::vector<double> pool(pool_d(g));
  for (double& v : pool) v = val(g);
  const double p_pos = prob(g);
  std::bernoulli_distribution pos_d(p_pos);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  ScoredPairSet out;
  out.member_count = n;
  for (std::size_t t = 0; t < n; ++t) {
    ScoredPair sp;
    sp.i = 0;
    sp.j = 1;
    sp.score = pool[pick(g)];
    sp.same_cluster = pos_d(g) ? 1 : 0;
    out.pairs.push_back(sp);
  }
  out.pairs[0].same_cluster = 1;  // both outcomes guaranteed
  out.pairs[1].same_cluster = 0;
  return out;
}

std::size_t count_negatives(const ScoredPairSet& s) {
  std::size_t n = 0;
  for (const auto& p : s.pairs)
    if (!p.same_cluster) ++n;
  return n;
}

FeatureMatrix random_points(std::mt19937_64& g, std::size_t n, std::size_t d,
                            double spread) {
  std::normal_distribution<double> nd(0.0, spread);
  FeatureMatrix X;
  X.n = n;
  X.d = d;
  X.values.resize(n * d);
  for (double& v : X.values) v = nd(g);
  X.groups.resize(n);
  for (std::size_t i = 0; i < n; ++i) X.groups[i] = i % 2 ? 1 : 0;
  return X;
}

SuiteResult suite_auc(std::uint64_t seed) {
  Checker c;
  c.res.suite = "auc";
  std::mt19937_64 g(mix_seed(seed, 0xA1));
  for (int t = 0; t < 200; ++t) {
    // Half the instances draw scores from a small pool, forcing duplicates;
    // the other half draw from a pool wider than the instance.
    ScoredPairSet s = t % 2 == 0 ? random_pair_set(g, 10, 500, 2, 40)
                                 : random_pair_set(g, 10, 500, 2000, 4000);
    double fast = aucc(s);
    double slow = auc_rank_sum(s);
    c.check(std::abs(fast - slow) <= 1e-9,
            "auc instance " + std::to_string(t) + ": trapezoid " +
                format_fixed(fast, 12) + " vs rank-sum " + format_fixed(slow, 12));
  }
  return c.res;
}

SuiteResult suite_facroc(std::uint64_t seed) {
  Checker c;
  c.res.suite = "facroc";
  std::mt19937_64 g(mix_seed(seed, 0xF1));
  for (int t = 0; t < 100; ++t) {
    ScoredPairSet a, b;
    do {
      a = random_pair_set(g, 80, 400, 12, 48);
    } while (count_negatives(a) % 128 == 0);
    do {
      b = random_pair_set(g, 80, 400, 12, 48);
    } while (count_negatives(b) % 128 == 0);

    FacrocResult fr = compute_facroc(a, b);
    double grid = facroc_grid(fr.curve_p, fr.curve_pbar, 1'000'000);
    c.check(std::abs(fr.value - grid) <= 1e-6,
            "facroc instance " + std::to_string(t) + ": exact " +
                format_fixed(fr.value, 10) + " vs grid " + format_fixed(grid, 10));

    FacrocResult swapped = compute_facroc(b, a);
    c.check(std::abs(fr.value - swapped.value) <= 1e-12,
            "facroc swap asymmetry at instance " + std::to_string(t));

    if (fr.crossings == 0) {
      c.check(fr.value == std::abs(fr.aucc_p - fr.aucc_pbar),
              "facroc crossing-free identity violated at instance " +
                  std::to_string(t));
    }

    // A slice paired with a reshuffled copy of itself must sit at exactly zero.
    ScoredPairSet shuffled = a;
    for (std::size_t i = shuffled.pairs.size(); i > 1; --i) {
      std::uniform_int_distribution<std::size_t> pick(0, i - 1);
      std::swap(shuffled.pairs[i - 1], shuffled.pairs[pick(g)]);
    }
    FacrocResult same = compute_facroc(a, shuffled);
    c.check(same.value == 0.0,
            "facroc of identical score multisets not zero at instance " +
                std::to_string(t));
  }
  return c.res;
}

SuiteResult suite_audit(std::uint64_t seed) {
  Checker c;
  c.res.suite = "audit";
  std::mt19937_64 g(mix_seed(seed, 0xAD));
  for (int t = 0; t < 60; ++t) {
    std::uniform_int_distribution<std::size_t> n_d(6, 10);
    const std::size_t n = n_d(g);
    const int k = 2 + (t % 2);
    FeatureMatrix X = random_points(g, n, 2, 1.0);
    if (t % 7 == 0 && n >= 4) {
      // Duplicate a point so zero distances (and the 0/0 rule) get exercised.
      for (std::size_t f = 0; f < X.d; ++f)
        X.values[1 * X.d + f] = X.values[0 * X.d + f];
    }
    DistanceMatrix D = distance_matrix(X);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i % k);
    for (std::size_t i = n; i > 1; --i) {
      std::uniform_int_distribution<std::size_t> pick(0, i - 1);
      std::swap(labels[i - 1], labels[pick(g)]);
    }
    AuditResult fast = proportionality_audit(D, labels, k);
    double slow = rho_exhaustive(D, labels, k);
    c.check(fast.rho == slow, "audit instance " + std::to_string(t) + ": fast " +
                                  format_fixed(fast.rho, 12) + " vs exhaustive " +
                                  format_fixed(slow, 12));
  }
  return c.res;
}

SuiteResult suite_balance(std::uint64_t /*seed*/) {
  Checker c;
  c.res.suite = "balance";
  struct Fixture {
    std::vector<int> labels;
    std::vector<std::uint8_t> groups;
    long num, den;  // expected value num/den
  };
  // Hand-counted fixtures; 1 means the protected group.
  const std::vector<Fixture> fixtures = {
      {{0, 0, 0, 0}, {1, 1, 0, 0}, 1, 1},
      {{0, 0, 0, 1, 1, 1}, {1, 0, 0, 1, 1, 0}, 1, 2},
      {{0, 0, 0}, {1, 1, 1}, 0, 1},
      {{0, 1}, {1, 0}, 0, 1},
      {{0, 0, 1, 1, 1}, {1, 0, 1, 1, 0}, 1, 2},
      {{0, 0, 0, 0, 0}, {1, 0, 0, 0, 0}, 1, 4},
      {{0, 1, 0, 1, 0, 1, 0, 1}, {1, 1, 0, 0, 1, 1, 0, 0}, 1, 1},
      {{0, 0, 0, 1, 1, 1, 1, 1}, {1, 1, 0, 0, 0, 1, 1, 1}, 1, 2},
      {{2, 2, 2, 0, 0, 1, 1}, {1, 0, 0, 1, 0, 1, 0}, 1, 2},
      {{0, 0, 0, 0, 0, 0, 0}, {1, 1, 1, 0, 0, 0, 0}, 3, 4},
      {{0, 0, 1, 1, 2, 2}, {1, 0, 1, 0, 1, 0}, 1, 1},
      {{0, 0, 1, 1, 2, 2}, {1, 0, 1, 0, 1, 1}, 0, 1},
      {{0, 0, 0, 0, 1, 1, 1, 1, 1, 1}, {1, 0, 0, 0, 1, 1, 0, 0, 0, 0}, 1, 3},
      {{0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1}, {1, 1, 1, 1, 0, 0, 0, 0, 0, 1, 0}, 4, 5},
      {{1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0},
       {1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0},
       1, 1},
      {{0, 0, 0, 0, 0, 1, 1, 1, 1}, {1, 1, 0, 0, 0, 1, 1, 1, 0}, 1, 3},
      {{3, 3, 2, 2, 1, 1, 0, 0}, {1, 0, 1, 0, 1, 0, 1, 0}, 1, 1},
      {{3, 3, 3, 2, 2, 1, 1, 0, 0}, {1, 1, 0, 1, 0, 1, 0, 1, 0}, 1, 2},
      {{0, 0, 0, 0, 0, 0, 1, 1}, {1, 1, 1, 1, 1, 0, 1, 0}, 1, 5},
      {{0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1}, {1, 1, 0, 0, 1, 1, 1, 0, 0, 0, 0}, 3, 4},
  };
  for (std::size_t t = 0; t < fixtures.size(); ++t) {
    const auto& f = fixtures[t];
    double expected = static_cast<double>(f.num) / static_cast<double>(f.den);
    double got = clustering_balance(f.labels, f.groups);
    c.check(got == expected, "balance fixture " + std::to_string(t) + ": got " +
                                 format_fixed(got, 10) + " expected " +
                                 format_fixed(expected, 10));
  }
  return c.res;
}

// Cost of a star decomposition under "every member pays its way to the
// fairlet's minority point". The minority side is the globally smaller group.
double star_cost(const DistanceMatrix& D, const FairletDecomposition& dec,
                 const std::vector<std::uint8_t>& groups) {
  std::size_t n_p = 0;
  for (std::uint8_t v : groups) n_p += v;
  const std::uint8_t minority_flag = 2 * n_p <= groups.size() ? 1 : 0;
  double total = 0.0;
  for (const auto& f : dec.fairlets) {
    std::size_t host = f.front();
    bool found = false;
    for (std::size_t m : f) {
      if (groups[m] == minority_flag) {
        host = m;
        found = true;
        break;
      }
    }
    if (!found) throw data_error("fairlet without a minority member");
    for (std::size_t m : f) total += D.at(m, host);
  }
  return total;
}

FeatureMatrix random_grouped_points(std::mt19937_64& g, std::size_t n_minor,
                                    std::size_t n_major) {
  FeatureMatrix X = random_points(g, n_minor + n_major, 3, 2.0);
  for (std::size_t i = 0; i < X.n; ++i) X.groups[i] = i < n_minor ? 1 : 0;
  return X;
}

SuiteResult suite_fairlet(std::uint64_t seed) {
  Checker c;
  c.res.suite = "fairlet";
  std::mt19937_64 g(mix_seed(seed, 0xFA));

  // Perfect matching against exhaustive permutations at a 1:1 target.
  for (int t = 0; t < 10; ++t) {
    std::uniform_int_distribution<std::size_t> size_d(3, 7);
    const std::size_t per_group = size_d(g);
    FeatureMatrix X = random_grouped_points(g, per_group, per_group);
    DistanceMatrix D = distance_matrix(X);
    FairletDecomposition dec = fairlet_decompose(D, X.groups, 1.0);
    double slow = min_matching_exhaustive(D, X.groups);
    c.check(std::abs(dec.cost - slow) <= 1e-9,
            "matching instance " + std::to_string(t) + ": flow " +
                format_fixed(dec.cost, 10) + " vs exhaustive " +
                format_fixed(slow, 10));
    c.check(dec.fairlets.size() == per_group,
            "matching instance " + std::to_string(t) + ": fairlet count");
  }

  // A 1/2 target reduces to (1, 2) and splits 2+4 points into two stars.
  {
    auto [b, r] = balance_ratio(0.5);
    c.check(b == 1 && r == 2, "balance ratio 1/2 not reduced to (1,2)");
    std::mt19937_64 g2(mix_seed(seed, 0xFB));
    FeatureMatrix X = random_grouped_points(g2, 2, 4);
    DistanceMatrix D = distance_matrix(X);
    FairletDecomposition dec = fairlet_decompose(D, X.groups, 0.5);
    bool shape = dec.fairlets.size() == 2;
    for (const auto& f : dec.fairlets) {
      std::size_t minors = 0;
      for (std::size_t m : f) minors += X.groups[m];
      shape = shape && minors == 1 && f.size() == 3;
    }
    c.check(shape, "1/2-target decomposition of 2+4 points is not two (1,2) stars");
  }

  // Random feasible instances at the headline 0.4 target: both decomposers
  // must return fairlets that each clear the target.
  for (int t = 0; t < 50; ++t) {
    std::uniform_int_distribution<std::size_t> major_d(10, 80);
    const std::size_t n_major = major_d(g);
    std::uniform_int_distribution<std::size_t> extra_d(0, n_major / 3);
    std::size_t n_minor = (2 * n_major + 4) / 5 + extra_d(g);  // >= 0.4 * major
    n_minor = std::min(n_minor, n_major);
    FeatureMatrix X = random_grouped_points(g, n_minor, n_major);
    DistanceMatrix D = distance_matrix(X);

    auto fairlet_balance = [&](const FairletDecomposition& dec) {
      std::vector<int> labels(X.n, -1);
      for (std::size_t f = 0; f < dec.fairlets.size(); ++f)
        for (std::size_t m : dec.fairlets[f]) labels[m] = static_cast<int>(f);
      return clustering_balance(labels, X.groups);
    };

    FairletDecomposition exact = fairlet_decompose(D, X.groups, 0.4);
    c.check(fairlet_balance(exact) >= 0.4,
            "exact decomposition below target at instance " + std::to_string(t));
    FairletDecomposition scal =
        scalable_fairlet_decompose(X, X.groups, 0.4, mix_seed(seed, 1000 + t));
    c.check(fairlet_balance(scal) >= 0.4,
            "scalable decomposition below target at instance " + std::to_string(t));

    // Final clusters inherit the target through phase 2.
    const int k = 2 + (t % 2);
    if (static_cast<std::size_t>(k) <= exact.fairlets.size()) {
      ClusterResult cl = fairlet_cluster(exact, D, k, mix_seed(seed, 3000 + t));
      c.check(clustering_balance(cl.labels, X.groups) >= 0.4,
              "final clusters below target at instance " + std::to_string(t));
    }
  }

  // At a 1/2 target both decomposers emit minority-centred stars, and the flow
  // solution is the optimum of the star cost, so the approximation can only
  // sit above it.
  for (int t = 0; t < 20; ++t) {
    std::uniform_int_distribution<std::size_t> major_d(20, 130);
    const std::size_t n_major = major_d(g);
    std::uniform_int_distribution<std::size_t> minor_d((n_major + 1) / 2, n_major);
    const std::size_t n_minor = minor_d(g);
    FeatureMatrix X = random_grouped_points(g, n_minor, n_major);
    DistanceMatrix D = distance_matrix(X);
    FairletDecomposition exact = fairlet_decompose(D, X.groups, 0.5);
    FairletDecomposition scal =
        scalable_fairlet_decompose(X, X.groups, 0.5, mix_seed(seed, 2000 + t));
    double cost_exact = star_cost(D, exact, X.groups);
    double cost_scal = star_cost(D, scal, X.groups);
    c.check(cost_scal >= cost_exact - 1e-9,
            "approximate stars undercut the optimal star cost at instance " +
                std::to_string(t) + ": " + format_fixed(cost_scal, 10) + " < " +
                format_fixed(cost_exact, 10));
  }
  return c.res;
}

SuiteResult suite_silhouette(std::uint64_t seed) {
  Checker c;
  c.res.suite = "silhouette";
  std::mt19937_64 g(mix_seed(seed, 0x51));
  for (int t = 0; t < 40; ++t) {
    std::uniform_int_distribution<std::size_t> n_d(8, 100);
    std::uniform_int_distribution<std::size_t> d_d(1, 5);
    const std::size_t n = n_d(g);
    FeatureMatrix X = random_points(g, n, d_d(g), 1.5);
    const int k = 2 + static_cast<int>(g() % 4);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i % k);
    for (std::size_t i = n; i > 1; --i) {
      std::uniform_int_distribution<std::size_t> pick(0, i - 1);
      std::swap(labels[i - 1], labels[pick(g)]);
    }
    DistanceMatrix D = distance_matrix(X);
    double fast = silhouette(D, labels, k);
    double slow = silhouette_naive(D, labels, k);
    c.check(std::abs(fast - slow) <= 1e-9,
            "silhouette instance " + std::to_string(t) + ": " +
                format_fixed(fast, 12) + " vs " + format_fixed(slow, 12));
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::size_t i = pick(g), j = pick(g);
    c.check(std::abs(point_distance(X, i, j) - distance_naive(X, i, j)) <= 1e-9,
            "distance mismatch at instance " + std::to_string(t));
  }
  return c.res;
}

SuiteResult suite_selectk(std::uint64_t seed) {
  Checker c;
  c.res.suite = "selectk";
  // Four well-separated blobs; the sweep should recover k = 4 nearly always.
  const std::size_t per = 100;
  const double sep = 10.0, sd = 1.0;
  const std::vector<std::pair<double, double>> centres{
      {0, 0}, {sep, 0}, {0, sep}, {sep, sep}};
  int hits = 0;
  const int trials = 20;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 g(mix_seed(seed, 0x4B00 + static_cast<std::uint64_t>(t)));
    std::normal_distribution<double> noise(0.0, sd);
    FeatureMatrix X;
    X.n = per * centres.size();
    X.d = 2;
    X.values.resize(X.n * 2);
    X.groups.resize(X.n);
    for (std::size_t i = 0; i < X.n; ++i) {
      const auto& ctr = centres[i / per];
      X.values[i * 2] = ctr.first + noise(g);
      X.values[i * 2 + 1] = ctr.second + noise(g);
      X.groups[i] = i % 2 ? 1 : 0;
    }
    SelectKResult sel = select_k(X, "kmeans", 2, 8, mix_seed(seed, 0x4C00 + t));
    c.check(sel.curve.size() == 7,
            "sweep trial " + std::to_string(t) + ": curve length");
    if (sel.k_star == 4) ++hits;
  }
  c.check(hits >= 18, "blob sweep found k=4 in only " + std::to_string(hits) +
                          " of " + std::to_string(trials) + " trials");
  return c.res;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"auc",     "facroc",     "audit",   "balance",
          "fairlet", "silhouette", "selectk", "all"};
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "auc") return suite_auc(seed);
  if (name == "facroc") return suite_facroc(seed);
  if (name == "audit") return suite_audit(seed);
  if (name == "balance") return suite_balance(seed);
  if (name == "fairlet") return suite_fairlet(seed);
  if (name == "silhouette") return suite_silhouette(seed);
  if (name == "selectk") return suite_selectk(seed);
  if (name == "all") {
    SuiteResult all;
    all.suite = "all";
    for (const auto& n : suite_names()) {
      if (n == "all") continue;
      SuiteResult r = run_suite(n, seed);
      all.passed += r.passed;
      all.failed += r.failed;
      for (const auto& f : r.failures) all.failures.push_back(r.suite + ": " + f);
    }
    return all;
  }
  throw usage_error("unknown oracle suite: " + name);
}

}  // namespace facroc::oracle
