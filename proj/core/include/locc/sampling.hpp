#pragma once

#include <cstdint>
#include <map>

#include "locc/states.hpp"

namespace locc {

struct FractionEstimate {
  int dimension = 0;
  int n_samples = 0;
  double fraction = 0.0;
  double std_error = 0.0;
  std::uint64_t seed = 0;
};

// Histogram over the number of sign changes of the partial-sum sequence T_k
// of a sampled pair, k = 1..d-1.
struct CrossingProfile {
  int dimension = 0;
  int n_samples = 0;
  std::uint64_t seed = 0;
  std::map<int, int> sign_change_counts;
};

// State drawn from the unitary invariant measure: independent standard
// complex Gaussian amplitudes, normalized.  Deterministic per seed.
PureState random_pure_state(Eigen::Index dim_a, Eigen::Index dim_b,
                            std::uint64_t seed);

// Monte Carlo estimate of the fraction of independent d x d state pairs whose
// Schmidt spectra are incomparable.
FractionEstimate incomparable_fraction(int d, int n_samples,
                                       std::uint64_t seed);

CrossingProfile crossing_profile(int d, int n_samples, std::uint64_t seed);

}  // namespace locc
