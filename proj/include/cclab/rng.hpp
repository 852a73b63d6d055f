#pragma once
#include <cmath>
#include <cstdint>
#include <random>

namespace cclab {

// Deterministic RNG: identical (seed, call sequence) gives identical doubles on a
// given build. Gaussian is an explicit Box-Muller so the draw sequence is ours,
// not the standard library's.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // worker streams: master seed xor worker index, per the concurrency contract
  Rng derive(std::uint64_t worker) const { return Rng(seed_ ^ worker); }

  double uniform() {  // [0,1)
    return (gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t bits() { return gen_(); }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 == 0.0) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

  int uniform_int(int n) {  // [0, n)
    return static_cast<int>(bits() % static_cast<std::uint64_t>(n));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace cclab
