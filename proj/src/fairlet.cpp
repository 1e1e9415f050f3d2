#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <vector>

#include "facroc/common.hpp"
#include "facroc/fairclust.hpp"
#include "facroc/fairness.hpp"

namespace facroc {

std::pair<int, int> balance_ratio(double t) {
  if (!(t > 0.0) || t > 1.0)
    throw usage_error("balance target must lie in (0, 1]");
  for (int r = 1; r <= 10; ++r)
    for (int b = 1; b <= r; ++b)
      if (static_cast<double>(b) / static_cast<double>(r) == t) return {b, r};
  throw usage_error("balance target not expressible as b/r with r <= 10");
}

namespace {

// Successive-shortest-path min-cost flow with Johnson potentials. Costs are
// integers on purpose: float costs let rounding noise open tiny negative
// residual cycles that a potential-based Dijkstra then chases forever, while
// integer arithmetic keeps the reduced-cost invariant exact.
struct Mcf {
  using Cost = long long;
  struct Edge {
    int to;
    long long cap;
    Cost cost;
    int rev;
  };
  std::vector<std::vector<Edge>> g;
  explicit Mcf(int n) : g(n) {}
  void add(int a, int b, long long cap, Cost cost) {
    g[a].push_back({b, cap, cost, static_cast<int>(g[b].size())});
    g[b].push_back({a, 0, -cost, static_cast<int>(g[a].size()) - 1});
  }
  // Sends `amount` units, returns total cost. All costs non-negative.
  Cost run(int s, int t, long long amount) {
    const int n = static_cast<int>(g.size());
    constexpr Cost kUnreached = std::numeric_limits<Cost>::max();
    std::vector<Cost> pot(n, 0);
    Cost total = 0;
    while (amount > 0) {
      std::vector<Cost> dist(n, kUnreached);
      std::vector<int> pe(n, -1), pv(n, -1);
      using Item = std::pair<Cost, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
      dist[s] = 0;
      pq.push({0, s});
      while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        for (int e = 0; e < static_cast<int>(g[v].size()); ++e) {
          const Edge& ed = g[v][e];
          if (ed.cap <= 0) continue;
          Cost nd = d + ed.cost + pot[v] - pot[ed.to];
          if (nd < dist[ed.to]) {
            dist[ed.to] = nd;
            pv[ed.to] = v;
            pe[ed.to] = e;
            pq.push({nd, ed.to});
          }
        }
      }
      if (dist[t] == kUnreached) throw data_error("fairlet matching: flow infeasible");
      for (int v = 0; v < n; ++v)
        if (dist[v] != kUnreached) pot[v] += dist[v];
      long long push = amount;
      for (int v = t; v != s; v = pv[v]) push = std::min(push, g[pv[v]][pe[v]].cap);
      for (int v = t; v != s; v = pv[v]) {
        Edge& ed = g[pv[v]][pe[v]];
        ed.cap -= push;
        g[v][ed.rev].cap += push;
        total += push * ed.cost;
      }
      amount -= push;
    }
    return total;
  }
};

std::size_t fairlet_medoid(const DistanceMatrix& D,
                           const std::vector<std::size_t>& members) {
  double best = kInf;
  std::size_t arg = members.front();
  for (std::size_t c : members) {
    double s = 0;
    for (std::size_t x : members) s += D.at(c, x);
    if (s < best) {
      best = s;
      arg = c;
    }
  }
  return arg;
}

void finalize(const DistanceMatrix& D, FairletDecomposition& dec) {
  dec.centers.clear();
  dec.cost = 0;
  for (const auto& f : dec.fairlets) {
    std::size_t c = fairlet_medoid(D, f);
    dec.centers.push_back(c);
    for (std::size_t x : f) dec.cost += D.at(x, c);
  }
}

double fairlet_balance(const std::vector<std::size_t>& members,
                       const std::vector<std::uint8_t>& groups) {
  std::size_t a = 0, b = 0;
  for (std::size_t x : members) (groups[x] ? a : b)++;
  if (a == 0 || b == 0) return 0.0;
  double p = static_cast<double>(a), q = static_cast<double>(b);
  return std::min(p / q, q / p);
}

// Star decomposition for (1, r') targets: every majority point is assigned to
// exactly one minority point, each minority hosting between 1 and r'. The
// assignment minimizing total minority-majority distance is a min-cost flow:
// each minority offers one free unit of sink capacity and r'-1 expensive
// units, so the optimum fills every free unit first, which is exactly the
// "at least one majority per minority" constraint.
FairletDecomposition decompose_star(const DistanceMatrix& D,
                                    const std::vector<std::size_t>& minority,
                                    const std::vector<std::size_t>& majority,
                                    int rprime) {
  const int m = static_cast<int>(minority.size());
  const int M = static_cast<int>(majority.size());
  if (m > 5000)
    throw data_error("exact fairlet matching limited to 5000 minority points");

  double dmax = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < M; ++j)
      dmax = std::max(dmax, D.at(minority[i], majority[j]));
  // Distances on a 2^26-step fixed-point grid; assignments whose true costs
  // differ by less than one step may tie, everything else orders exactly.
  const double scale =
      dmax > 0 ? static_cast<double>(1LL << 26) / dmax : 1.0;
  const Mcf::Cost K = (static_cast<Mcf::Cost>(1) << 26) * M + 1;

  // Nodes: 0 source, 1..M majority, M+1..M+m minority, M+m+1 sink.
  Mcf net(M + m + 2);
  const int src = 0, sink = M + m + 1;
  for (int j = 0; j < M; ++j) {
    net.add(src, 1 + j, 1, 0);
    for (int i = 0; i < m; ++i)
      net.add(1 + j, M + 1 + i, 1,
              std::llround(D.at(minority[i], majority[j]) * scale));
  }
  for (int i = 0; i < m; ++i) {
    net.add(M + 1 + i, sink, 1, 0);
    if (rprime > 1) net.add(M + 1 + i, sink, rprime - 1, K);
  }
  net.run(src, sink, M);

  FairletDecomposition dec;
  dec.b = 1;
  dec.r = rprime;
  dec.fairlets.assign(m, {});
  for (int i = 0; i < m; ++i) dec.fairlets[i].push_back(minority[i]);
  for (int j = 0; j < M; ++j) {
    int host = -1;
    for (const auto& e : net.g[1 + j]) {
      if (e.to >= M + 1 && e.to < M + 1 + m && e.cap == 0) {
        host = e.to - (M + 1);
        break;
      }
    }
    if (host < 0) throw data_error("fairlet matching left a point unassigned");
    dec.fairlets[host].push_back(majority[j]);
  }
  finalize(D, dec);
  return dec;
}

// Local-search refinement on a batched decomposition: same-group swaps and
// capacity-checked relocations between fairlets, accepted whenever they lower
// the summed medoid cost. Swaps keep every fairlet's composition untouched
// and relocations pass an exact integer balance test, so the balance
// guarantee survives refinement unconditionally. Scan order is fixed, which
// keeps the whole decomposition deterministic.
void refine_batch(const DistanceMatrix& D, const std::vector<std::uint8_t>& groups,
                  std::vector<std::vector<std::size_t>>& fairlets, int b, int r) {
  const std::size_t F = fairlets.size();
  if (F < 2) return;
  auto cost_of = [&](const std::vector<std::size_t>& mem) {
    double best = kInf;
    for (std::size_t c : mem) {
      double s = 0;
      for (std::size_t x : mem) s += D.at(c, x);
      best = std::min(best, s);
    }
    return best;
  };
  std::vector<double> fcost(F);
  std::size_t points = 0;
  for (std::size_t i = 0; i < F; ++i) {
    fcost[i] = cost_of(fairlets[i]);
    points += fairlets[i].size();
  }

  // Balance >= b/r as an exact two-sided integer inequality.
  auto balanced = [&](long a, long c) {
    return a > 0 && c > 0 && a * r >= c * b && c * r >= a * b;
  };
  auto counts_of = [&](const std::vector<std::size_t>& mem) {
    std::pair<long, long> c{0, 0};
    for (std::size_t x : mem) (groups[x] ? c.first : c.second)++;
    return c;
  };

  // On large inputs, restrict partner fairlets to the nearest few by seed
  // distance; useful exchanges are local anyway.
  std::vector<std::vector<std::size_t>> partners(F);
  const bool restrict_partners = points > 1500;
  for (std::size_t i = 0; i < F; ++i) {
    if (!restrict_partners) {
      for (std::size_t j = 0; j < F; ++j)
        if (j != i) partners[i].push_back(j);
      continue;
    }
    std::vector<std::pair<double, std::size_t>> near;
    near.reserve(F - 1);
    for (std::size_t j = 0; j < F; ++j)
      if (j != i) near.push_back({D.at(fairlets[i].front(), fairlets[j].front()), j});
    std::size_t keep = std::min<std::size_t>(24, near.size());
    std::partial_sort(near.begin(), near.begin() + keep, near.end());
    for (std::size_t s = 0; s < keep; ++s) partners[i].push_back(near[s].second);
  }

  for (int pass = 0; pass < 40; ++pass) {
    bool improved = false;
    for (std::size_t i = 0; i < F; ++i) {
      for (std::size_t j : partners[i]) {
        if (j < i && !restrict_partners) continue;  // each pair once
        for (std::size_t xi = 0; xi < fairlets[i].size(); ++xi)
          for (std::size_t yj = 0; yj < fairlets[j].size(); ++yj) {
            if (groups[fairlets[i][xi]] != groups[fairlets[j][yj]]) continue;
            std::swap(fairlets[i][xi], fairlets[j][yj]);
            double ci = cost_of(fairlets[i]), cj = cost_of(fairlets[j]);
            if (ci + cj + 1e-9 < fcost[i] + fcost[j]) {
              fcost[i] = ci;
              fcost[j] = cj;
              improved = true;
            } else {
              std::swap(fairlets[i][xi], fairlets[j][yj]);
            }
          }
      }
    }
    for (std::size_t i = 0; i < F; ++i) {
      auto [ai, ci] = counts_of(fairlets[i]);
      for (std::size_t xi = 0; xi < fairlets[i].size();) {
        std::size_t x = fairlets[i][xi];
        bool is_p = groups[x] != 0;
        long na = ai - (is_p ? 1 : 0), nc = ci - (is_p ? 0 : 1);
        bool moved = false;
        if (balanced(na, nc)) {
          for (std::size_t j : partners[i]) {
            auto [aj, cj] = counts_of(fairlets[j]);
            if (!balanced(aj + (is_p ? 1 : 0), cj + (is_p ? 0 : 1))) continue;
            std::vector<std::size_t> src = fairlets[i];
            src.erase(src.begin() + static_cast<std::ptrdiff_t>(xi));
            std::vector<std::size_t> dst = fairlets[j];
            dst.push_back(x);
            double cs = cost_of(src), cd = cost_of(dst);
            if (cs + cd + 1e-9 < fcost[i] + fcost[j]) {
              fairlets[i] = std::move(src);
              fairlets[j] = std::move(dst);
              fcost[i] = cs;
              fcost[j] = cd;
              ai = na;
              ci = nc;
              improved = true;
              moved = true;
              break;
            }
          }
        }
        if (!moved) ++xi;
      }
    }
    if (!improved) break;
  }
}

// General (b, r) batching. Repeatedly seeds a fairlet at the most isolated
// unassigned minority point (the one whose nearest unassigned majority is
// farthest) and fills it with the nearest required partners; leftover points
// end up in one remainder fairlet when its composition stays fair, otherwise
// they are spread across existing fairlets within the balance caps. A swap
// and relocation refinement then polishes the assignment geometry.
FairletDecomposition decompose_batch(const DistanceMatrix& D,
                                     const std::vector<std::uint8_t>& groups,
                                     const std::vector<std::size_t>& minority,
                                     const std::vector<std::size_t>& majority,
                                     int b, int r) {
  FairletDecomposition dec;
  dec.b = b;
  dec.r = r;
  const std::size_t f = std::min(minority.size() / b, majority.size() / r);

  std::vector<std::size_t> min_left = minority, maj_left = majority;
  auto take_nearest = [&D](std::vector<std::size_t>& pool, std::size_t anchor,
                           std::size_t count, std::vector<std::size_t>& out) {
    for (std::size_t c = 0; c < count; ++c) {
      std::size_t best = 0;
      double bd = kInf;
      for (std::size_t idx = 0; idx < pool.size(); ++idx) {
        double v = D.at(anchor, pool[idx]);
        if (v < bd || (v == bd && pool[idx] < pool[best])) {
          bd = v;
          best = idx;
        }
      }
      out.push_back(pool[best]);
      pool.erase(pool.begin() + best);
    }
  };

  for (std::size_t fi = 0; fi < f; ++fi) {
    // Seed: unassigned minority point with the farthest nearest majority.
    std::size_t seed_idx = 0;
    double seed_score = -1;
    for (std::size_t idx = 0; idx < min_left.size(); ++idx) {
      double nearest = kInf;
      for (std::size_t mj : maj_left)
        nearest = std::min(nearest, D.at(min_left[idx], mj));
      if (nearest > seed_score) {
        seed_score = nearest;
        seed_idx = idx;
      }
    }
    std::size_t seed = min_left[seed_idx];
    min_left.erase(min_left.begin() + seed_idx);

    std::vector<std::size_t> members{seed};
    take_nearest(min_left, seed, static_cast<std::size_t>(b) - 1, members);
    take_nearest(maj_left, seed, static_cast<std::size_t>(r), members);
    dec.fairlets.push_back(std::move(members));
  }

  std::vector<std::size_t> leftovers;
  leftovers.insert(leftovers.end(), min_left.begin(), min_left.end());
  leftovers.insert(leftovers.end(), maj_left.begin(), maj_left.end());

  if (dec.fairlets.empty()) {
    // Too few points for even one exact fairlet; the whole dataset is one
    // fairlet and inherits the dataset balance.
    dec.fairlets.push_back(leftovers);
  } else if (!leftovers.empty()) {
    std::vector<std::size_t> rem = leftovers;
    if (fairlet_balance(rem, groups) >= static_cast<double>(b) / r) {
      dec.fairlets.push_back(std::move(rem));
    } else {
      // Spread under the balance caps, minority first: every minority added
      // to a fairlet raises its majority capacity.
      auto counts = [&](const std::vector<std::size_t>& mem) {
        std::pair<std::size_t, std::size_t> c{0, 0};  // minority-role, other
        for (std::size_t x : mem) (groups[x] == groups[minority[0]] ? c.first
                                                                    : c.second)++;
        return c;
      };
      std::stable_partition(leftovers.begin(), leftovers.end(),
                            [&](std::size_t x) {
                              return groups[x] == groups[minority[0]];
                            });
      for (std::size_t x : leftovers) {
        bool is_min = groups[x] == groups[minority[0]];
        double bd = kInf;
        std::size_t arg = dec.fairlets.size();
        for (std::size_t fj = 0; fj < dec.fairlets.size(); ++fj) {
          auto [mc, Mc] = counts(dec.fairlets[fj]);
          bool fits = is_min ? (mc + 1) * static_cast<std::size_t>(b) <=
                                   Mc * static_cast<std::size_t>(r)
                             : (Mc + 1) * static_cast<std::size_t>(b) <=
                                   mc * static_cast<std::size_t>(r);
          if (!fits) continue;
          double v = D.at(x, dec.fairlets[fj].front());
          if (v < bd) {
            bd = v;
            arg = fj;
          }
        }
        if (arg == dec.fairlets.size())
          throw infeasible_fairness_error(
              "infeasible fairness target: leftover point cannot be placed");
        dec.fairlets[arg].push_back(x);
      }
    }
  }
  refine_batch(D, groups, dec.fairlets, b, r);
  return dec;
}

}  // namespace

FairletDecomposition fairlet_decompose(const DistanceMatrix& D,
                                       const std::vector<std::uint8_t>& groups,
                                       double t) {
  auto [b, r] = balance_ratio(t);
  std::vector<std::size_t> p, pbar;
  for (std::size_t i = 0; i < groups.size(); ++i)
    (groups[i] ? p : pbar).push_back(i);
  if (p.empty() || pbar.empty())
    throw data_error("fairlet decomposition needs both groups present");
  double bal = std::min(static_cast<double>(p.size()) / pbar.size(),
                        static_cast<double>(pbar.size()) / p.size());
  if (bal < t)
    throw infeasible_fairness_error("infeasible fairness target: dataset balance " +
                                    format_fixed(bal, 4) + " < " +
                                    format_fixed(t, 4));
  const bool p_minor = p.size() <= pbar.size();
  const auto& minority = p_minor ? p : pbar;
  const auto& majority = p_minor ? pbar : p;

  FairletDecomposition dec =
      b == 1 ? decompose_star(D, minority, majority, r)
             : decompose_batch(D, groups, minority, majority, b, r);
  finalize(D, dec);

  double target = static_cast<double>(b) / r;
  for (const auto& fl : dec.fairlets)
    if (fairlet_balance(fl, groups) + 1e-12 < target)
      throw infeasible_fairness_error(
          "infeasible fairness target: decomposition fell below balance " +
          format_fixed(target, 4));
  return dec;
}

double decomposition_cost(const DistanceMatrix& D, const FairletDecomposition& dec) {
  double cost = 0;
  for (const auto& f : dec.fairlets) {
    std::size_t c = fairlet_medoid(D, f);
    for (std::size_t x : f) cost += D.at(x, c);
  }
  return cost;
}

namespace {

// k-median medoid-swap local search over fairlet centers. Distances between
// centers come through `dist`; candidate swaps may be subsampled for very
// many fairlets (the balance guarantee never depends on phase-2 quality).
template <typename DistFn>
std::vector<int> kmedian_over_centers(std::size_t f, int k, std::uint64_t seed,
                                      DistFn&& dist) {
  std::vector<std::size_t> all(f);
  std::iota(all.begin(), all.end(), 0);

  const bool big = f > 4000;
  const int restarts = big ? 1 : 5;
  const int max_pass = big ? 3 : 50;
  const std::size_t cand_cap = big ? 200 : f;

  std::vector<std::size_t> best_med;
  double best_cost = kInf;
  for (int rs = 0; rs < restarts; ++rs) {
    std::mt19937_64 rng(mix_seed(seed, 0xfa1e7ULL + rs));
    std::vector<std::size_t> pool = all;
    for (int i = 0; i < k; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    std::vector<std::size_t> med(pool.begin(), pool.begin() + k);
    std::sort(med.begin(), med.end());

    auto cost_of = [&](const std::vector<std::size_t>& ms) {
      double c = 0;
      for (std::size_t i = 0; i < f; ++i) {
        double bd = kInf;
        for (std::size_t m : ms) bd = std::min(bd, dist(i, m));
        c += bd;
      }
      return c;
    };
    double cost = cost_of(med);
    for (int pass = 0; pass < max_pass; ++pass) {
      bool improved = false;
      std::vector<std::size_t> cands;
      if (cand_cap >= f) {
        cands = all;
      } else {
        std::vector<std::size_t> tmp = all;
        for (std::size_t i = 0; i < cand_cap; ++i) {
          std::uniform_int_distribution<std::size_t> pick(i, tmp.size() - 1);
          std::swap(tmp[i], tmp[pick(rng)]);
        }
        cands.assign(tmp.begin(), tmp.begin() + cand_cap);
      }
      for (std::size_t c : cands) {
        if (std::find(med.begin(), med.end(), c) != med.end()) continue;
        for (int s = 0; s < k; ++s) {
          std::size_t old = med[s];
          med[s] = c;
          double nc = cost_of(med);
          if (nc + 1e-12 < cost) {
            cost = nc;
            improved = true;
          } else {
            med[s] = old;
          }
        }
      }
      if (!improved) break;
    }
    if (cost < best_cost) {
      best_cost = cost;
      best_med = med;
    }
  }

  std::vector<int> assign(f, 0);
  for (std::size_t i = 0; i < f; ++i) {
    double bd = kInf;
    for (int s = 0; s < k; ++s) {
      double v = dist(i, best_med[s]);
      if (v < bd) {
        bd = v;
        assign[i] = s;
      }
    }
  }
  return assign;
}

ClusterResult assemble(const FairletDecomposition& dec,
                       const std::vector<int>& fairlet_cluster_of, int k,
                       std::uint64_t seed, std::size_t n) {
  ClusterResult res;
  res.labels.assign(n, -1);
  for (std::size_t fi = 0; fi < dec.fairlets.size(); ++fi)
    for (std::size_t x : dec.fairlets[fi]) res.labels[x] = fairlet_cluster_of[fi];
  // Compress ids in case a medoid lost all its fairlets (cannot happen for
  // k-median output, but keep the invariant airtight).
  std::vector<int> remap(k, -1);
  int next = 0;
  for (int& l : res.labels) {
    if (l < 0) throw data_error("fairlet decomposition missed a point");
    if (remap[l] < 0) remap[l] = next++;
    l = remap[l];
  }
  res.k = next;
  res.seed = seed;
  return res;
}

}  // namespace

ClusterResult fairlet_cluster(const FairletDecomposition& dec, const DistanceMatrix& D,
                              int k, std::uint64_t seed) {
  const std::size_t f = dec.fairlets.size();
  if (k < 1 || static_cast<std::size_t>(k) > f)
    throw usage_error("fairlet clustering: k exceeds fairlet count");
  auto assign = kmedian_over_centers(f, k, seed, [&](std::size_t a, std::size_t b) {
    return D.at(dec.centers[a], dec.centers[b]);
  });
  std::size_t n = 0;
  for (const auto& fl : dec.fairlets) n += fl.size();
  ClusterResult res = assemble(dec, assign, k, seed, n);
  res.model = "fairlet";
  return res;
}

ClusterResult fairlet_cluster(const FairletDecomposition& dec, const FeatureMatrix& X,
                              int k, std::uint64_t seed) {
  const std::size_t f = dec.fairlets.size();
  if (k < 1 || static_cast<std::size_t>(k) > f)
    throw usage_error("fairlet clustering: k exceeds fairlet count");
  auto assign = kmedian_over_centers(f, k, seed, [&](std::size_t a, std::size_t b) {
    return point_distance(X, dec.centers[a], dec.centers[b]);
  });
  ClusterResult res = assemble(dec, assign, k, seed, X.n);
  res.model = "scalable";
  return res;
}

}  // namespace facroc
