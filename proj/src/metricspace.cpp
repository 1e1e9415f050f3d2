#include "facroc/metricspace.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <unordered_set>

#include "facroc/common.hpp"

namespace facroc {

double point_distance(const FeatureMatrix& X, std::size_t i, std::size_t j) {
  double s = 0;
  const double* a = X.values.data() + i * X.d;
  const double* b = X.values.data() + j * X.d;
  for (std::size_t c = 0; c < X.d; ++c) {
    double diff = a[c] - b[c];
    s += diff * diff;
  }
  return std::sqrt(s);
}

DistanceMatrix distance_matrix(const FeatureMatrix& X) {
  if (X.n > kDenseLimit) {
    std::ostringstream msg;
    msg << "dense distance matrix refused for n=" << X.n << " (limit "
        << kDenseLimit << "); use the on-demand interface";
    throw data_error(msg.str());
  }
  DistanceMatrix D;
  D.n = X.n;
  D.d.assign(X.n * X.n, 0.0);
  for (std::size_t i = 0; i < X.n; ++i)
    for (std::size_t j = i + 1; j < X.n; ++j) {
      double v = point_distance(X, i, j);
      D.d[i * X.n + j] = v;
      D.d[j * X.n + i] = v;
    }
  return D;
}

namespace {

std::uint64_t slice_tag(PairSlice s) {
  switch (s) {
    case PairSlice::all: return 0;
    case PairSlice::group_p: return 1;
    case PairSlice::group_pbar: return 2;
  }
  return 0;
}

// Points eligible for a slice. With any_endpoint every point is eligible and
// pairs are filtered at emission time instead.
std::vector<std::uint32_t> slice_members(const std::vector<std::uint8_t>& groups,
                                         PairSlice slice, bool any_endpoint) {
  std::vector<std::uint32_t> m;
  for (std::uint32_t i = 0; i < groups.size(); ++i) {
    bool in_p = groups[i] != 0;
    bool keep = false;
    switch (slice) {
      case PairSlice::all: keep = true; break;
      case PairSlice::group_p: keep = any_endpoint || in_p; break;
      case PairSlice::group_pbar: keep = any_endpoint || !in_p; break;
    }
    if (keep) m.push_back(i);
  }
  return m;
}

bool pair_in_slice(const std::vector<std::uint8_t>& groups, std::uint32_t i,
                   std::uint32_t j, PairSlice slice, bool any_endpoint) {
  if (slice == PairSlice::all) return true;
  bool pi = groups[i] != 0, pj = groups[j] != 0;
  bool want = slice == PairSlice::group_p;
  if (any_endpoint) return pi == want || pj == want;
  return pi == want && pj == want;
}

// Decodes a linear index over the upper triangle of an m x m matrix back to
// (row, col), row < col.
std::pair<std::uint32_t, std::uint32_t> decode_pair(std::uint64_t lin,
                                                    std::uint64_t m) {
  // row r covers indices [r*m - r*(r+1)/2 + ... ); binary search the row.
  std::uint64_t lo = 0, hi = m - 1;
  auto row_start = [m](std::uint64_t r) { return r * m - r * (r + 1) / 2; };
  while (lo < hi) {
    std::uint64_t mid = (lo + hi + 1) / 2;
    if (row_start(mid) <= lin)
      lo = mid;
    else
      hi = mid - 1;
  }
  std::uint64_t col = lo + 1 + (lin - row_start(lo));
  return {static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(col)};
}

template <typename DistFn>
ScoredPairSet build_pairs(std::size_t n, const std::vector<int>& labels,
                          const std::vector<std::uint8_t>& groups, PairSlice slice,
                          const SamplerConfig& cfg, DistFn&& dist) {
  if (labels.size() != n || groups.size() != n)
    throw data_error("scored_pairs: labels/groups length mismatch");

  ScoredPairSet out;
  out.slice = slice;
  out.seed = mix_seed(cfg.seed, slice_tag(slice));

  std::vector<std::uint32_t> members = slice_members(groups, slice, cfg.any_endpoint);
  out.member_count = members.size();
  if (members.size() < 2)
    throw degenerate_slice_error("degenerate slice: fewer than two member points");

  const std::uint64_t m = members.size();
  const std::uint64_t total = m * (m - 1) / 2;

  auto emit = [&](std::uint32_t a, std::uint32_t b) {
    std::uint32_t i = members[a], j = members[b];
    if (!pair_in_slice(groups, i, j, slice, cfg.any_endpoint)) return;
    ScoredPair p;
    p.i = i;
    p.j = j;
    p.score = -dist(i, j);  // similarity ranks close pairs first
    p.same_cluster = labels[i] == labels[j] ? 1 : 0;
    out.pairs.push_back(p);
  };

  if (m <= cfg.full_enumeration_limit || total <= cfg.sample_size) {
    out.sampled = false;
    out.pairs.reserve(total);
    for (std::uint32_t a = 0; a < m; ++a)
      for (std::uint32_t b = a + 1; b < m; ++b) emit(a, b);
  } else {
    out.sampled = true;
    std::mt19937_64 rng(out.seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, total - 1);
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(cfg.sample_size * 2);
    while (chosen.size() < cfg.sample_size) chosen.insert(pick(rng));
    std::vector<std::uint64_t> order(chosen.begin(), chosen.end());
    std::sort(order.begin(), order.end());
    out.pairs.reserve(order.size());
    for (std::uint64_t lin : order) {
      auto [a, b] = decode_pair(lin, m);
      emit(a, b);
    }
  }

  bool has_pos = false, has_neg = false;
  for (const auto& p : out.pairs) (p.same_cluster ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg)
    throw degenerate_slice_error(
        "degenerate slice: pairs are all same-cluster or all split");
  return out;
}

}  // namespace

ScoredPairSet scored_pairs(const DistanceMatrix& D, const std::vector<int>& labels,
                           const std::vector<std::uint8_t>& groups, PairSlice slice,
                           const SamplerConfig& cfg) {
  return build_pairs(D.n, labels, groups, slice, cfg,
                     [&D](std::size_t i, std::size_t j) { return D.at(i, j); });
}

ScoredPairSet scored_pairs(const FeatureMatrix& X, const std::vector<int>& labels,
                           PairSlice slice, const SamplerConfig& cfg) {
  return build_pairs(X.n, labels, X.groups, slice, cfg,
                     [&X](std::size_t i, std::size_t j) {
                       return point_distance(X, i, j);
                     });
}

}  // namespace facroc
