#pragma once

#include <map>
#include <vector>

#include "locc/prob_vector.hpp"
#include "locc/states.hpp"

namespace locc {

struct MonotoneReport {
  double entropy_source = 0.0;  // bits
  double entropy_target = 0.0;  // bits
  std::map<double, std::pair<double, double>> power_sums;  // k -> (src, tgt)
  bool consistent = false;
};

// Shannon entropy in bits, with 0 log 0 = 0.  Equals the von Neumann entropy
// of any state whose reduced spectrum is p.
double shannon_entropy(const ProbVector& p);

// sum_i p_i^k for k >= 1; equals tr(rho^k) for spectrum p.
double power_sum(const ProbVector& p, double k);

// Two-dimensional special case: with Schmidt rank <= 2 on both sides the
// transformation is possible exactly when the target entropy does not exceed
// the source entropy.
bool qubit_criterion(const PureState& psi, const PureState& phi);

MonotoneReport monotone_report(const PureState& psi, const PureState& phi,
                               const std::vector<double>& ks);

}  // namespace locc
