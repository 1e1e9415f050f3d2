#include <algorithm>
#include <cmath>
#include <vector>

#include "facroc/cluster.hpp"
#include "facroc/common.hpp"

namespace facroc {

namespace {

// Working linkage value between clusters: plain distance for average and
// complete linkage, squared (variance-increase style) for ward. Heights are
// reported as sqrt for ward so all three are in distance units.
double initial_value(Linkage l, double dist) {
  return l == Linkage::ward ? dist * dist : dist;
}

double merge_height(Linkage l, double w) {
  return l == Linkage::ward ? std::sqrt(w) : w;
}

double lance_williams(Linkage l, double w_ac, double w_bc, double w_ab,
                      double na, double nb, double nc) {
  switch (l) {
    case Linkage::ward:
      return ((na + nc) * w_ac + (nb + nc) * w_bc - nc * w_ab) / (na + nb + nc);
    case Linkage::average:
      return (na * w_ac + nb * w_bc) / (na + nb);
    case Linkage::complete:
      return std::max(w_ac, w_bc);
  }
  return 0;
}

}  // namespace

ClusterResult hierarchical(const FeatureMatrix& X, const HierarchicalConfig& cfg,
                           std::vector<MergeStep>* history) {
  const std::size_t n = X.n;
  if (cfg.k < 1 || static_cast<std::size_t>(cfg.k) > n)
    throw usage_error("hierarchical: k must be in [1, n]");
  if (n > kDenseLimit)
    throw data_error("hierarchical clustering refused for n > " +
                     std::to_string(kDenseLimit));

  // Slot i starts as singleton {i}; a merge of slots (a, b), a < b, stores the
  // union in slot a and retires slot b.
  std::vector<double> w(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = initial_value(cfg.linkage, point_distance(X, i, j));
      w[i * n + j] = v;
      w[j * n + i] = v;
    }
  std::vector<char> active(n, 1);
  std::vector<double> size(n, 1.0);
  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t i = 0; i < n; ++i) members[i] = {i};

  // Nearest-active-slot cache; ties go to the smaller index.
  std::vector<std::size_t> nn(n, 0);
  auto recompute_nn = [&](std::size_t i) {
    double best = kInf;
    std::size_t arg = i;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && active[j] && w[i * n + j] < best) {
        best = w[i * n + j];
        arg = j;
      }
    nn[i] = arg;
  };
  for (std::size_t i = 0; i < n; ++i) recompute_nn(i);

  std::size_t remaining = n;
  while (remaining > static_cast<std::size_t>(cfg.k)) {
    // Global minimum merge; equal values break towards the smallest (a, b).
    double best = kInf;
    std::size_t ba = 0, bb = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || nn[i] == i) continue;
      double v = w[i * n + nn[i]];
      std::size_t a = std::min(i, nn[i]), b = std::max(i, nn[i]);
      if (v < best || (v == best && (a < ba || (a == ba && b < bb)))) {
        best = v;
        ba = a;
        bb = b;
      }
    }

    if (history)
      history->push_back({static_cast<int>(ba), static_cast<int>(bb),
                          merge_height(cfg.linkage, best)});

    double na = size[ba], nb = size[bb], w_ab = w[ba * n + bb];
    for (std::size_t c = 0; c < n; ++c) {
      if (!active[c] || c == ba || c == bb) continue;
      double v = lance_williams(cfg.linkage, w[ba * n + c], w[bb * n + c], w_ab,
                                na, nb, size[c]);
      w[ba * n + c] = v;
      w[c * n + ba] = v;
    }
    active[bb] = 0;
    size[ba] += size[bb];
    members[ba].insert(members[ba].end(), members[bb].begin(), members[bb].end());
    members[bb].clear();
    --remaining;
    if (remaining == static_cast<std::size_t>(cfg.k)) break;

    recompute_nn(ba);
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || i == ba) continue;
      if (nn[i] == ba || nn[i] == bb) {
        recompute_nn(i);
      } else {
        double v = w[i * n + ba];
        if (v < w[i * n + nn[i]] || (v == w[i * n + nn[i]] && ba < nn[i]))
          nn[i] = ba;
      }
    }
  }

  ClusterResult res;
  res.labels.assign(n, -1);
  int cid = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!active[i]) continue;
    for (std::size_t m : members[i]) res.labels[m] = cid;
    ++cid;
  }
  res.k = cid;
  res.model = "hierarchical";
  res.seed = 0;
  return res;
}

}  // namespace facroc
