#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace locc {

// Numerical tolerances shared across the library.
inline constexpr double kEpsNum = 1e-12;  // nonnegativity / zero threshold
inline constexpr double kEpsMaj = 1e-10;  // partial-sum comparisons

// A probability vector: nonnegative reals summing to one.  Entries below
// kEpsNum are clamped to zero at construction; order is preserved as given.
class ProbVector {
 public:
  ProbVector() = default;
  explicit ProbVector(std::vector<double> entries);

  const std::vector<double>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }

  // Entries in descending order (stable: equal values keep input order).
  std::vector<double> sorted_desc() const;

  // Copy zero-padded to length n (n >= size).
  ProbVector padded(std::size_t n) const;

 private:
  std::vector<double> entries_;
};

// A T-transform: identity except on coordinates (i, j), where it acts as
// [[t, 1-t], [1-t, t]].
struct TTransform {
  std::size_t i = 0;
  std::size_t j = 0;
  double t = 1.0;
};

enum class Comparison { LeftPrecedes, RightPrecedes, Equivalent, Incomparable };

// Deltas and partial sums of sorted spectra, used for the incomparability
// crossing statistic.
struct CrossingReport {
  std::vector<double> deltas;        // p_i^down - q_i^down
  std::vector<double> partial_sums;  // T_k = sum_{i<=k} deltas_i
  bool crosses = false;
  std::optional<std::size_t> first_positive_k;
  std::optional<std::size_t> first_negative_k;
};

// True iff x is majorized by y (x precedes y in the majorization order):
// every descending partial sum of x is bounded by the corresponding sum of y.
bool majorizes(const ProbVector& x, const ProbVector& y);

Comparison compare(const ProbVector& x, const ProbVector& y);

// Constructive chain of at most d-1 T-transforms carrying y to x^down.
// Requires x majorized by y; throws NotMajorized otherwise.
std::vector<TTransform> decompose_t_transforms(const ProbVector& x,
                                               const ProbVector& y);

ProbVector apply_t_transform(const ProbVector& v, const TTransform& t);

CrossingReport crossing_statistic(const ProbVector& p, const ProbVector& q);

}  // namespace locc
