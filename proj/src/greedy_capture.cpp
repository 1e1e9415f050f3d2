#include <algorithm>
#include <numeric>
#include <queue>
#include <vector>

#include "facroc/common.hpp"
#include "facroc/fairclust.hpp"

namespace facroc {

// Event-driven ball growth. Balls grow around every candidate (all points) at
// the same rate; a candidate opens once ceil(n/k) uncaptured points sit in its
// ball, capturing them, and open centers keep swallowing points as the radius
// grows. At equal radius, captures by open centers precede new openings, and
// lower candidate index wins among openings.
ClusterResult greedy_capture(const DistanceMatrix& D, int k) {
  const std::size_t n = D.n;
  if (k < 2 || static_cast<std::size_t>(k) > n)
    throw usage_error("greedy capture: need 2 <= k <= n");
  const std::size_t g = (n + static_cast<std::size_t>(k) - 1) /
                        static_cast<std::size_t>(k);

  // Per-candidate orders of all points by distance (ties by index).
  std::vector<std::vector<std::uint32_t>> order(n);
  for (std::size_t c = 0; c < n; ++c) {
    order[c].resize(n);
    std::iota(order[c].begin(), order[c].end(), 0u);
    std::sort(order[c].begin(), order[c].end(),
              [&](std::uint32_t a, std::uint32_t b) {
                double da = D.at(c, a), db = D.at(c, b);
                return da < db || (da == db && a < b);
              });
  }

  std::vector<int> owner(n, -1);              // capturing centre per point
  std::vector<char> open(n, 0);
  std::vector<std::size_t> capture_ptr(n, 0); // open centres: next in order[]
  std::vector<int> centres;                   // in opening order

  // Radius at which a closed candidate could open: distance to its g-th
  // nearest currently-uncaptured point.
  auto open_radius = [&](std::size_t c) {
    std::size_t cnt = 0;
    for (std::uint32_t x : order[c]) {
      if (owner[x] >= 0) continue;
      if (++cnt == g) return D.at(c, x);
    }
    return kInf;
  };

  using Ev = std::pair<double, std::uint32_t>;
  std::priority_queue<Ev, std::vector<Ev>, std::greater<Ev>> opens, captures;
  for (std::size_t c = 0; c < n; ++c) opens.push({open_radius(c), c});

  auto next_capture = [&](std::size_t o) {
    while (capture_ptr[o] < n && owner[order[o][capture_ptr[o]]] >= 0)
      capture_ptr[o]++;
    return capture_ptr[o] < n ? D.at(o, order[o][capture_ptr[o]]) : kInf;
  };

  while (static_cast<int>(centres.size()) < k) {
    // Validate queue fronts lazily: entries go stale as points get captured.
    double dcap = kInf;
    std::uint32_t ocap = 0;
    while (!captures.empty()) {
      auto [d, o] = captures.top();
      double now = next_capture(o);
      if (now == kInf) {
        captures.pop();
        continue;
      }
      if (now != d) {
        captures.pop();
        captures.push({now, o});
        continue;
      }
      dcap = d;
      ocap = o;
      break;
    }
    double dopen = kInf;
    std::uint32_t copen = 0;
    while (!opens.empty()) {
      auto [d, c] = opens.top();
      if (open[c]) {
        opens.pop();
        continue;
      }
      double now = open_radius(c);
      if (now == kInf) {
        opens.pop();
        continue;
      }
      if (now != d) {
        opens.pop();
        opens.push({now, c});
        continue;
      }
      dopen = d;
      copen = c;
      break;
    }
    if (dcap == kInf && dopen == kInf) break;

    if (dcap <= dopen) {
      std::uint32_t x = order[ocap][capture_ptr[ocap]];
      owner[x] = static_cast<int>(ocap);
      capture_ptr[ocap]++;
      captures.push({next_capture(ocap), ocap});
    } else {
      // Open copen, capturing every uncaptured point within its radius.
      open[copen] = 1;
      opens.pop();
      for (std::uint32_t x : order[copen]) {
        double d = D.at(copen, x);
        if (d > dopen) break;
        if (owner[x] < 0) owner[x] = static_cast<int>(copen);
      }
      centres.push_back(static_cast<int>(copen));
      capture_ptr[copen] = 0;
      captures.push({next_capture(copen), copen});
    }
  }

  if (centres.empty()) throw data_error("greedy capture opened no centre");

  // Leftovers go to the nearest open centre (smaller centre index on ties,
  // which matches letting the balls keep growing).
  for (std::size_t x = 0; x < n; ++x) {
    if (owner[x] >= 0) continue;
    double bd = kInf;
    int arg = centres.front();
    for (int c : centres) {
      double d = D.at(static_cast<std::size_t>(c), x);
      if (d < bd || (d == bd && c < arg)) {
        bd = d;
        arg = c;
      }
    }
    owner[x] = arg;
  }

  ClusterResult res;
  res.labels.resize(n);
  std::vector<int> id_of(n, -1);
  for (std::size_t ci = 0; ci < centres.size(); ++ci)
    id_of[centres[ci]] = static_cast<int>(ci);
  for (std::size_t x = 0; x < n; ++x) res.labels[x] = id_of[owner[x]];
  res.k = static_cast<int>(centres.size());
  res.model = "proportional";
  res.seed = 0;
  return res;
}

}  // namespace facroc
