#include "locc/sampling.hpp"

#include <cmath>

#include "locc/errors.hpp"
#include "locc/prob_vector.hpp"
#include "locc/rng.hpp"

namespace locc {

namespace {

PureState sample_state(Eigen::Index dim_a, Eigen::Index dim_b,
                       CounterRng& rng) {
  Matrix amp(dim_a, dim_b);
  for (Eigen::Index a = 0; a < dim_a; ++a) {
    for (Eigen::Index b = 0; b < dim_b; ++b) {
      amp(a, b) = rng.normal_complex();
    }
  }
  return PureState(dim_a, dim_b, amp / amp.norm());
}

// Pair k of the experiment: two fresh states from substreams 2k and 2k+1.
std::pair<ProbVector, ProbVector> sample_spectrum_pair(int d,
                                                       std::uint64_t seed,
                                                       int pair_index) {
  CounterRng ra = CounterRng::stream(seed, 2 * static_cast<std::uint64_t>(pair_index));
  CounterRng rb =
      CounterRng::stream(seed, 2 * static_cast<std::uint64_t>(pair_index) + 1);
  return {schmidt_spectrum(sample_state(d, d, ra)),
          schmidt_spectrum(sample_state(d, d, rb))};
}

int sign_changes(const CrossingReport& rep) {
  int changes = 0;
  int last_sign = 0;
  // T_d vanishes by normalization; only k = 1..d-1 carry information.
  for (std::size_t k = 0; k + 1 < rep.partial_sums.size(); ++k) {
    const double t = rep.partial_sums[k];
    const int sign = t > kEpsMaj ? 1 : (t < -kEpsMaj ? -1 : 0);
    if (sign != 0) {
      if (last_sign != 0 && sign != last_sign) ++changes;
      last_sign = sign;
    }
  }
  return changes;
}

}  // namespace

PureState random_pure_state(Eigen::Index dim_a, Eigen::Index dim_b,
                            std::uint64_t seed) {
  if (dim_a < 1 || dim_b < 1) {
    throw InvalidParameter("dimensions must be >= 1");
  }
  CounterRng rng(seed);
  return sample_state(dim_a, dim_b, rng);
}

FractionEstimate incomparable_fraction(int d, int n_samples,
                                       std::uint64_t seed) {
  if (d < 2 || n_samples < 1) {
    throw InvalidParameter("need d >= 2 and n_samples >= 1");
  }
  int incomparable = 0;
  for (int k = 0; k < n_samples; ++k) {
    auto [p, q] = sample_spectrum_pair(d, seed, k);
    if (compare(p, q) == Comparison::Incomparable) ++incomparable;
  }
  FractionEstimate est;
  est.dimension = d;
  est.n_samples = n_samples;
  est.seed = seed;
  est.fraction = static_cast<double>(incomparable) / n_samples;
  est.std_error = std::sqrt(est.fraction * (1.0 - est.fraction) / n_samples);
  return est;
}

CrossingProfile crossing_profile(int d, int n_samples, std::uint64_t seed) {
  if (d < 2 || n_samples < 1) {
    throw InvalidParameter("need d >= 2 and n_samples >= 1");
  }
  CrossingProfile prof;
  prof.dimension = d;
  prof.n_samples = n_samples;
  prof.seed = seed;
  for (int k = 0; k < n_samples; ++k) {
    auto [p, q] = sample_spectrum_pair(d, seed, k);
    ++prof.sign_change_counts[sign_changes(crossing_statistic(p, q))];
  }
  return prof;
}

}  // namespace locc
