#pragma once

#include <cmath>
#include <cstdint>

namespace condan {

// Counter-splittable xoshiro-style generator. Streams are derived from
// (seed, stream, case) so concurrent cases reproduce regardless of
// scheduling. Distributions are implemented here rather than with
// <random> so that reports are stable across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) { init(seed); }
  Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t idx) {
    init(mix(mix(seed ^ 0x9e3779b97f4a7c15ULL) ^ mix(stream + 0x45d9f3b3335b369ULL)) ^
         mix(idx + 0x27d4eb2f165667c5ULL));
  }

  std::uint64_t next_u64() {
    std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // integer in [0, n)
  std::uint64_t below(std::uint64_t n) { return n ? next_u64() % n : 0; }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  double normal() {
    // Box-Muller; discard the second value for simplicity.
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  bool coin(double p = 0.5) { return uniform() < p; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  static std::uint64_t mix(std::uint64_t z) {  // splitmix64 finalizer
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  void init(std::uint64_t seed) {
    std::uint64_t z = seed;
    for (auto& s : s_) {
      z = mix(z);
      s = z ? z : 0x853c49e6748fea9bULL;
    }
  }

  std::uint64_t s_[4];
};

}  // namespace condan
