#ifndef BELLSIM_RNG_HPP
#define BELLSIM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace bellsim {

// Seeded random stream with explicit variate transforms.
//
// The standard library distributions are implementation-defined, so two
// builds of the same config could disagree event-by-event. All sampling in
// the simulator therefore goes through this wrapper: mt19937_64 (whose output
// sequence the standard pins down exactly) plus fixed transforms.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Exponential variate with mean 1/rate.
  double exponential(double rate) {
    return -std::log1p(-uniform()) / rate;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Unbiased integer in [0, bound), bound >= 1.
  std::uint64_t uniform_int(std::uint64_t bound) {
    const std::uint64_t min = (-bound) % bound;  // 2^64 mod bound
    std::uint64_t x;
    do {
      x = engine_();
    } while (x < min);
    return x % bound;
  }

  // Fair bit.
  int coin() { return static_cast<int>(engine_() >> 63); }

  // Decorrelated child seed for run index `index` under a master seed.
  // splitmix64 finalizer over a Weyl sequence.
  static std::uint64_t derive(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bellsim

#endif
