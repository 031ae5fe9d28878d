#ifndef ORLICZ_RNG_HPP
#define ORLICZ_RNG_HPP

#include <cmath>
#include <cstdint>

namespace orlicz {

/// splitmix64-based generator. Streams are derived by key mixing, so a trial
/// or stratum draws the same numbers no matter how work is scheduled.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Independent child stream, keyed by (suite, trial) style coordinates.
  Rng derive(std::uint64_t key) const {
    return Rng(mix(state_ ^ (0x9e3779b97f4a7c15ULL + mix(key))));
  }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1), 53-bit mantissa, identical across platforms.
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Log-uniform over [a, b], a, b > 0.
  double log_uniform(double a, double b) {
    return std::exp(uniform(std::log(a), std::log(b)));
  }

  std::uint64_t uniform_index(std::uint64_t n) { return next_u64() % n; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
    z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
    return z ^ (z >> 33);
  }

  std::uint64_t state_;
};

}  // namespace orlicz

#endif
