#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace locc {

// Counter-based pseudo-random generator (splitmix64 finalizer applied to a
// keyed counter).  Streams derived from (seed, index) pairs are independent,
// so sampling work can be split across tasks deterministically.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(mix(key ^ kKeyTweak)) {}

  // Independent substream for a (root seed, stream index) pair.
  static CounterRng stream(std::uint64_t seed, std::uint64_t index) {
    CounterRng r(mix(seed + kGolden) ^ mix(index * kGolden + 0x9e3779b97f4a7c15ull));
    return r;
  }

  std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGolden); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard complex Gaussian (E|z|^2 = 1), Box-Muller in polar form.
  std::complex<double> normal_complex() {
    double u1 = uniform01();
    while (u1 == 0.0) u1 = uniform01();
    const double r = std::sqrt(-std::log(u1));
    const double theta = 2.0 * M_PI * uniform01();
    return {r * std::cos(theta), r * std::sin(theta)};
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;
  static constexpr std::uint64_t kKeyTweak = 0xd1b54a32d192ed03ull;

  static std::uint64_t mix(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace locc
