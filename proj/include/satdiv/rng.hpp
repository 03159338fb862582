#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace satdiv {

// splitmix64 step; used to derive child seeds from a master seed so that
// adding experiment cells never perturbs the streams of existing ones.
inline std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = mix_seed(master ^ 0x5851f42d4c957f2dULL);
  s = mix_seed(s ^ a);
  s = mix_seed(s ^ b);
  s = mix_seed(s ^ c);
  return s;
}

// Deterministic RNG for all stochastic components. Wraps mt19937_64 (whose
// output sequence is pinned by the standard) and implements the bounded
// draws directly so results do not depend on the standard library's
// distribution implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0)
      throw std::invalid_argument("Rng::below(0)");
    // Rejection sampling over the largest multiple of n.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  int below_int(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(below(n)); }

  bool coin() { return (engine_() >> 63) != 0; }

  // Uniform real in [0, 1) with 53 random bits.
  double real() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
  std::mt19937_64 engine_;
};

} // namespace satdiv
