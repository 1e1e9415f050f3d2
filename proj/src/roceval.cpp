#include "facroc/roceval.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "facroc/common.hpp"

namespace facroc {

RocCurve roc_curve(const ScoredPairSet& pairs) {
  RocCurve c;
  for (const auto& p : pairs.pairs) (p.same_cluster ? c.n_pos : c.n_neg)++;
  if (c.n_pos == 0 || c.n_neg == 0)
    throw degenerate_slice_error(
        "degenerate slice: ROC needs both same-cluster and split pairs");

  // Sort scores descending; equal scores advance together as one diagonal
  // segment, which is what makes the area match the half-credit rank statistic.
  std::vector<std::pair<double, std::uint8_t>> sp;
  sp.reserve(pairs.pairs.size());
  for (const auto& p : pairs.pairs) sp.emplace_back(p.score, p.same_cluster);
  std::sort(sp.begin(), sp.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  c.fpr.push_back(0.0);
  c.tpr.push_back(0.0);
  std::size_t tp = 0, fp = 0;
  double P = static_cast<double>(c.n_pos), N = static_cast<double>(c.n_neg);
  std::size_t i = 0;
  double auc = 0.0;
  while (i < sp.size()) {
    std::size_t j = i;
    std::size_t tie_pos = 0, tie_neg = 0;
    while (j < sp.size() && sp[j].first == sp[i].first) {
      (sp[j].second ? tie_pos : tie_neg)++;
      ++j;
    }
    double x0 = fp / N, y0 = tp / P;
    tp += tie_pos;
    fp += tie_neg;
    double x1 = fp / N, y1 = tp / P;
    auc += (x1 - x0) * (y0 + y1) / 2.0;
    c.fpr.push_back(x1);
    c.tpr.push_back(y1);
    i = j;
  }
  c.auc = auc;
  return c;
}

double aucc(const ScoredPairSet& pairs) { return roc_curve(pairs).auc; }

namespace {

// A non-vertical stretch of the polyline, linear in fpr on [x0, x1].
struct Piece {
  double x0, x1, y0, y1;
  double at(double x) const {
    return y0 + (y1 - y0) * ((x - x0) / (x1 - x0));
  }
};

std::vector<Piece> nonvertical_pieces(const RocCurve& c) {
  std::vector<Piece> out;
  for (std::size_t i = 1; i < c.fpr.size(); ++i) {
    if (c.fpr[i] > c.fpr[i - 1])
      out.push_back({c.fpr[i - 1], c.fpr[i], c.tpr[i - 1], c.tpr[i]});
  }
  if (out.empty())
    throw degenerate_slice_error("degenerate slice: ROC curve has no extent");
  return out;
}

}  // namespace

FacrocResult compute_facroc(const ScoredPairSet& pairs_p,
                            const ScoredPairSet& pairs_pbar) {
  FacrocResult r;
  r.curve_p = roc_curve(pairs_p);
  r.curve_pbar = roc_curve(pairs_pbar);
  r.aucc_p = r.curve_p.auc;
  r.aucc_pbar = r.curve_pbar.auc;

  auto pa = nonvertical_pieces(r.curve_p);
  auto pb = nonvertical_pieces(r.curve_pbar);

  // Both curves are linear between consecutive breakpoints, so the absolute
  // difference integrates in closed form per interval, splitting where the
  // difference changes sign.
  std::vector<double> xs;
  xs.reserve(pa.size() + pb.size() + 2);
  for (const auto& p : pa) {
    xs.push_back(p.x0);
    xs.push_back(p.x1);
  }
  for (const auto& p : pb) {
    xs.push_back(p.x0);
    xs.push_back(p.x1);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  double area = 0.0;
  int last_sign = 0;
  std::size_t ia = 0, ib = 0;
  for (std::size_t t = 1; t < xs.size(); ++t) {
    double xa = xs[t - 1], xb = xs[t];
    while (pa[ia].x1 <= xa) ++ia;
    while (pb[ib].x1 <= xa) ++ib;
    double L = xb - xa;
    double d0 = pa[ia].at(xa) - pb[ib].at(xa);
    double d1 = pa[ia].at(xb) - pb[ib].at(xb);
    for (double d : {d0, d1}) {
      int s = d > 0 ? 1 : d < 0 ? -1 : 0;
      if (s != 0) {
        if (last_sign != 0 && s != last_sign) ++r.crossings;
        last_sign = s;
      }
    }
    if (d0 * d1 < 0) {
      double s = L * d0 / (d0 - d1);  // root of the linear difference
      area += std::abs(d0) * s / 2.0 + std::abs(d1) * (L - s) / 2.0;
    } else {
      area += std::abs(d0 + d1) / 2.0 * L;
    }
  }
  // Without a sign change the integral of |difference| collapses to the
  // difference of the two areas; use that form so the identity is exact.
  r.value = r.crossings == 0 ? std::abs(r.aucc_p - r.aucc_pbar) : area;
  return r;
}

}  // namespace facroc
