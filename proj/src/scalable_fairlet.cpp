#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_map>
#include <vector>

#include "facroc/common.hpp"
#include "facroc/fairclust.hpp"

namespace facroc {

namespace {

double fairlet_balance(const std::vector<std::size_t>& members,
                       const std::vector<std::uint8_t>& groups) {
  std::size_t a = 0, b = 0;
  for (std::size_t x : members) (groups[x] ? a : b)++;
  if (a == 0 || b == 0) return 0.0;
  double p = static_cast<double>(a), q = static_cast<double>(b);
  return std::min(p / q, q / p);
}

void finalize_lazy(const FeatureMatrix& X, FairletDecomposition& dec) {
  dec.centers.clear();
  dec.cost = 0;
  for (const auto& f : dec.fairlets) {
    double best = kInf;
    std::size_t arg = f.front();
    for (std::size_t c : f) {
      double s = 0;
      for (std::size_t x : f) s += point_distance(X, c, x);
      if (s < best) {
        best = s;
        arg = c;
      }
    }
    dec.centers.push_back(arg);
    for (std::size_t x : f) dec.cost += point_distance(X, x, arg);
  }
}

struct Cell {
  std::vector<std::size_t> minor, major;
};

std::uint64_t fnv_step(std::uint64_t h, std::uint64_t v) {
  h ^= v;
  return h * 1099511628211ULL;
}

}  // namespace

FairletDecomposition scalable_fairlet_decompose(const FeatureMatrix& X,
                                                const std::vector<std::uint8_t>& groups,
                                                double t, std::uint64_t seed) {
  auto [b, r] = balance_ratio(t);
  const std::size_t n = X.n;
  if (groups.size() != n) throw data_error("groups length mismatch");
  std::vector<std::size_t> p, pbar;
  for (std::size_t i = 0; i < n; ++i) (groups[i] ? p : pbar).push_back(i);
  if (p.empty() || pbar.empty())
    throw data_error("fairlet decomposition needs both groups present");
  double bal = std::min(static_cast<double>(p.size()) / pbar.size(),
                        static_cast<double>(pbar.size()) / p.size());
  if (bal < t)
    throw infeasible_fairness_error("infeasible fairness target: dataset balance " +
                                    format_fixed(bal, 4) + " < " +
                                    format_fixed(t, 4));
  const bool p_minor = p.size() <= pbar.size();

  // Randomly shifted grid hierarchy: each level halves the cell side; points
  // sharing a cell get paired there, the rest bubble up to coarser levels.
  std::vector<double> lo(X.d, kInf), hi(X.d, -kInf);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < X.d; ++j) {
      lo[j] = std::min(lo[j], X.at(i, j));
      hi[j] = std::max(hi[j], X.at(i, j));
    }
  double span = 0;
  for (std::size_t j = 0; j < X.d; ++j) span = std::max(span, hi[j] - lo[j]);

  int levels = 1;
  if (span > 0) {
    levels = 32;
    if (n <= 2000) {
      // Fine enough once cells are smaller than half the closest gap.
      double gap = kInf;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          double d = point_distance(X, i, j);
          if (d > 0) gap = std::min(gap, d);
        }
      if (gap < kInf) {
        int need = 1;
        double side = 2 * span;
        while (side >= gap / 2 && need < 32) {
          side /= 2;
          ++need;
        }
        levels = need;
      } else {
        levels = 1;  // all points coincide
      }
    }
  }

  std::mt19937_64 rng(mix_seed(seed, 0x5ca1ab1eULL));
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> shift(X.d);
  for (double& s : shift) s = uni(rng) * std::max(span, 1.0);

  FairletDecomposition dec;
  dec.b = b;
  dec.r = r;

  std::vector<std::size_t> todo(n);
  std::iota(todo.begin(), todo.end(), 0);

  auto pair_cell = [&](Cell& c) {
    if (b == 1) {
      // Star cores: one minority + one majority per fairlet; extra majority
      // is attached after all levels, keeping every fairlet a (1, q) star.
      while (!c.minor.empty() && !c.major.empty()) {
        dec.fairlets.push_back({c.minor.front(), c.major.front()});
        c.minor.erase(c.minor.begin());
        c.major.erase(c.major.begin());
      }
    } else {
      while (c.minor.size() >= static_cast<std::size_t>(b) &&
             c.major.size() >= static_cast<std::size_t>(r)) {
        std::vector<std::size_t> members(c.minor.begin(), c.minor.begin() + b);
        members.insert(members.end(), c.major.begin(), c.major.begin() + r);
        c.minor.erase(c.minor.begin(), c.minor.begin() + b);
        c.major.erase(c.major.begin(), c.major.begin() + r);
        dec.fairlets.push_back(std::move(members));
      }
    }
  };

  for (int lv = levels - 1; lv >= 0 && !todo.empty(); --lv) {
    double side = (2 * span) / static_cast<double>(1ULL << lv);
    if (span == 0) side = 1.0;
    // Key points by cell id; the 64-bit hash stands in for the id tuple, and
    // a collision (vanishingly unlikely) only merges two cells, never breaks
    // the partition or balance guarantees.
    std::unordered_map<std::uint64_t, Cell> cells;
    cells.reserve(todo.size() * 2);
    for (std::size_t i : todo) {
      std::uint64_t h = 1469598103934665603ULL;
      for (std::size_t j = 0; j < X.d; ++j) {
        auto cj = static_cast<std::int64_t>(
            std::floor((X.at(i, j) - lo[j] + shift[j]) / side));
        h = fnv_step(h, static_cast<std::uint64_t>(cj));
      }
      Cell& c = cells[h];
      ((groups[i] != 0) == p_minor ? c.minor : c.major).push_back(i);
    }
    std::vector<Cell*> order;
    order.reserve(cells.size());
    for (auto& [h, c] : cells) order.push_back(&c);
    std::sort(order.begin(), order.end(), [](const Cell* a, const Cell* b2) {
      std::size_t ma = a->minor.empty() ? a->major.front() : a->minor.front();
      std::size_t mb = b2->minor.empty() ? b2->major.front() : b2->minor.front();
      return ma < mb;
    });
    std::vector<std::size_t> next;
    for (Cell* c : order) {
      pair_cell(*c);
      next.insert(next.end(), c->minor.begin(), c->minor.end());
      next.insert(next.end(), c->major.begin(), c->major.end());
    }
    std::sort(next.begin(), next.end());
    todo.swap(next);
  }

  // Virtual root: everything left shares one cell.
  std::vector<std::size_t> res_minor, res_major;
  for (std::size_t i : todo)
    (((groups[i] != 0) == p_minor) ? res_minor : res_major).push_back(i);

  if (b == 1) {
    Cell root{res_minor, res_major};
    pair_cell(root);
    if (!root.minor.empty())
      throw data_error("scalable decomposition left minority points unpaired");
    // Attach leftover majority to the nearest star with room.
    std::vector<int> load(dec.fairlets.size(), 0);
    for (std::size_t fi = 0; fi < dec.fairlets.size(); ++fi)
      load[fi] = static_cast<int>(dec.fairlets[fi].size()) - 1;
    for (std::size_t x : root.major) {
      double bd = kInf;
      std::size_t arg = dec.fairlets.size();
      for (std::size_t fi = 0; fi < dec.fairlets.size(); ++fi) {
        if (load[fi] >= r) continue;
        double v = point_distance(X, x, dec.fairlets[fi].front());
        if (v < bd) {
          bd = v;
          arg = fi;
        }
      }
      if (arg == dec.fairlets.size())
        throw infeasible_fairness_error(
            "infeasible fairness target: no star can absorb leftover point");
      dec.fairlets[arg].push_back(x);
      load[arg]++;
    }
  } else {
    const std::size_t f_res =
        std::min(res_minor.size() / b, res_major.size() / r);
    const bool by_distance = todo.size() <= 4000;
    for (std::size_t fi = 0; fi < f_res; ++fi) {
      std::vector<std::size_t> members;
      if (by_distance) {
        // Seed at the first leftover minority and gather nearest partners.
        std::size_t seedp = res_minor.front();
        auto take = [&](std::vector<std::size_t>& pool, std::size_t cnt) {
          std::partial_sort(pool.begin(), pool.begin() + cnt, pool.end(),
                            [&](std::size_t a2, std::size_t b2) {
                              double da = point_distance(X, seedp, a2);
                              double db = point_distance(X, seedp, b2);
                              return da < db || (da == db && a2 < b2);
                            });
          members.insert(members.end(), pool.begin(), pool.begin() + cnt);
          pool.erase(pool.begin(), pool.begin() + cnt);
        };
        take(res_minor, b);
        take(res_major, r);
      } else {
        members.assign(res_minor.begin(), res_minor.begin() + b);
        members.insert(members.end(), res_major.begin(), res_major.begin() + r);
        res_minor.erase(res_minor.begin(), res_minor.begin() + b);
        res_major.erase(res_major.begin(), res_major.begin() + r);
      }
      dec.fairlets.push_back(std::move(members));
    }
    std::vector<std::size_t> leftovers = res_minor;
    leftovers.insert(leftovers.end(), res_major.begin(), res_major.end());
    if (dec.fairlets.empty()) {
      if (!leftovers.empty()) dec.fairlets.push_back(leftovers);
    } else if (!leftovers.empty()) {
      std::vector<std::size_t> rem = leftovers;
      if (fairlet_balance(rem, groups) >= static_cast<double>(b) / r) {
        dec.fairlets.push_back(std::move(rem));
      } else {
        auto counts = [&](const std::vector<std::size_t>& mem) {
          std::pair<std::size_t, std::size_t> c{0, 0};
          for (std::size_t x : mem)
            (((groups[x] != 0) == p_minor) ? c.first : c.second)++;
          return c;
        };
        for (std::size_t x : leftovers) {
          bool is_min = (groups[x] != 0) == p_minor;
          double bd = kInf;
          std::size_t arg = dec.fairlets.size();
          for (std::size_t fj = 0; fj < dec.fairlets.size(); ++fj) {
            auto [mc, Mc] = counts(dec.fairlets[fj]);
            bool fits = is_min ? (mc + 1) * static_cast<std::size_t>(b) <=
                                     Mc * static_cast<std::size_t>(r)
                               : (Mc + 1) * static_cast<std::size_t>(b) <=
                                     mc * static_cast<std::size_t>(r);
            if (!fits) continue;
            double v = point_distance(X, x, dec.fairlets[fj].front());
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
  }

  finalize_lazy(X, dec);

  double target = static_cast<double>(b) / r;
  for (const auto& fl : dec.fairlets)
    if (fairlet_balance(fl, groups) + 1e-12 < target)
      throw infeasible_fairness_error(
          "infeasible fairness target: decomposition fell below balance " +
          format_fixed(target, 4));
  return dec;
}

}  // namespace facroc
