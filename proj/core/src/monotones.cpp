#include "locc/monotones.hpp"

#include <cmath>

#include "locc/errors.hpp"

namespace locc {

double shannon_entropy(const ProbVector& p) {
  double h = 0.0;
  for (double v : p.entries()) {
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h;
}

double power_sum(const ProbVector& p, double k) {
  if (k < 1.0) {
    throw InvalidParameter("power_sum requires k >= 1");
  }
  double s = 0.0;
  for (double v : p.entries()) {
    if (v > 0.0) s += std::pow(v, k);
  }
  return s;
}

bool qubit_criterion(const PureState& psi, const PureState& phi) {
  if (schmidt_rank(psi) > 2 || schmidt_rank(phi) > 2) {
    throw RankTooHigh("qubit_criterion requires Schmidt rank <= 2");
  }
  return shannon_entropy(schmidt_spectrum(phi)) <=
         shannon_entropy(schmidt_spectrum(psi)) + kEpsMaj;
}

MonotoneReport monotone_report(const PureState& psi, const PureState& phi,
                               const std::vector<double>& ks) {
  const ProbVector src = schmidt_spectrum(psi);
  const ProbVector tgt = schmidt_spectrum(phi);
  MonotoneReport rep;
  rep.entropy_source = shannon_entropy(src);
  rep.entropy_target = shannon_entropy(tgt);
  rep.consistent = rep.entropy_target <= rep.entropy_source + kEpsMaj;
  for (double k : ks) {
    const double a = power_sum(src, k);
    const double b = power_sum(tgt, k);
    rep.power_sums[k] = {a, b};
    if (k >= 2.0 && a > b + kEpsMaj) rep.consistent = false;
  }
  return rep;
}

}  // namespace locc
