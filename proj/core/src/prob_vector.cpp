#include "locc/prob_vector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "locc/errors.hpp"

namespace locc {

ProbVector::ProbVector(std::vector<double> entries) : entries_(std::move(entries)) {
  double sum = 0.0;
  for (double& e : entries_) {
    if (e < -kEpsNum) {
      throw InvalidVector("ProbVector entry " + std::to_string(e) +
                          " is negative beyond tolerance");
    }
    if (e < kEpsNum) e = 0.0;
    sum += e;
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    throw InvalidVector("ProbVector sums to " + std::to_string(sum) +
                        ", expected 1");
  }
}

std::vector<double> ProbVector::sorted_desc() const {
  std::vector<double> v = entries_;
  std::stable_sort(v.begin(), v.end(), std::greater<double>());
  return v;
}

ProbVector ProbVector::padded(std::size_t n) const {
  std::vector<double> v = entries_;
  if (n > v.size()) v.resize(n, 0.0);
  ProbVector out;
  out.entries_ = std::move(v);
  return out;
}

namespace {

// Zero-pad both to the common length and sort descending.
std::pair<std::vector<double>, std::vector<double>> aligned_sorted(
    const ProbVector& x, const ProbVector& y) {
  const std::size_t n = std::max(x.size(), y.size());
  return {x.padded(n).sorted_desc(), y.padded(n).sorted_desc()};
}

bool majorizes_sorted(const std::vector<double>& xs,
                      const std::vector<double>& ys) {
  double sx = 0.0, sy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sx += xs[k];
    sy += ys[k];
    if (sx > sy + kEpsMaj) return false;
  }
  return std::abs(sx - sy) <= 1e-10;
}

}  // namespace

bool majorizes(const ProbVector& x, const ProbVector& y) {
  auto [xs, ys] = aligned_sorted(x, y);
  return majorizes_sorted(xs, ys);
}

Comparison compare(const ProbVector& x, const ProbVector& y) {
  auto [xs, ys] = aligned_sorted(x, y);
  bool equal = true;
  for (std::size_t i = 0; i < xs.size() && equal; ++i) {
    equal = std::abs(xs[i] - ys[i]) <= kEpsMaj;
  }
  if (equal) return Comparison::Equivalent;
  const bool xy = majorizes_sorted(xs, ys);
  const bool yx = majorizes_sorted(ys, xs);
  if (xy && yx) return Comparison::Equivalent;
  if (xy) return Comparison::LeftPrecedes;
  if (yx) return Comparison::RightPrecedes;
  return Comparison::Incomparable;
}

std::vector<TTransform> decompose_t_transforms(const ProbVector& x,
                                               const ProbVector& y) {
  if (!majorizes(x, y)) {
    throw NotMajorized("decompose_t_transforms requires x majorized by y");
  }
  const std::size_t n = std::max(x.size(), y.size());
  std::vector<double> xs = x.padded(n).sorted_desc();
  std::vector<double> cur = y.padded(n).sorted_desc();

  std::vector<TTransform> chain;
  while (chain.size() + 1 < n || chain.empty()) {
    // Smallest j with cur_j > x_j, then smallest k > j with cur_k < x_k.
    std::size_t j = n, k = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (cur[i] > xs[i] + kEpsNum) {
        j = i;
        break;
      }
    }
    if (j == n) break;  // already equal within tolerance
    for (std::size_t i = j + 1; i < n; ++i) {
      if (cur[i] < xs[i] - kEpsNum) {
        k = i;
        break;
      }
    }
    if (k == n) break;  // cannot happen when x precedes y; tolerance guard
    const double delta = std::min(cur[j] - xs[j], xs[k] - cur[k]);
    const double gap = cur[j] - cur[k];
    const double t = 1.0 - delta / gap;
    chain.push_back({j, k, t});
    cur[j] -= delta;
    cur[k] += delta;
  }
  return chain;
}

ProbVector apply_t_transform(const ProbVector& v, const TTransform& t) {
  if (t.i >= v.size() || t.j >= v.size() || t.i == t.j) {
    throw IndexOutOfRange("T-transform indices out of range");
  }
  std::vector<double> out = v.entries();
  const double vi = out[t.i], vj = out[t.j];
  out[t.i] = t.t * vi + (1.0 - t.t) * vj;
  out[t.j] = (1.0 - t.t) * vi + t.t * vj;
  return ProbVector(out);
}

CrossingReport crossing_statistic(const ProbVector& p, const ProbVector& q) {
  auto [ps, qs] = aligned_sorted(p, q);
  CrossingReport rep;
  rep.deltas.resize(ps.size());
  rep.partial_sums.resize(ps.size());
  double running = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    rep.deltas[i] = ps[i] - qs[i];
    running += rep.deltas[i];
    rep.partial_sums[i] = running;
    if (running > kEpsMaj && !rep.first_positive_k) rep.first_positive_k = i;
    if (running < -kEpsMaj && !rep.first_negative_k) rep.first_negative_k = i;
  }
  rep.crosses = rep.first_positive_k.has_value() && rep.first_negative_k.has_value();
  return rep;
}

}  // namespace locc
