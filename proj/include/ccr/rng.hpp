#ifndef CCR_RNG_HPP
#define CCR_RNG_HPP

#include <cstdint>

namespace ccr {

// splitmix64. Stable across platforms and compilers, so seeded sweeps are
// reproducible bytewise; also cheap enough to reseed per work item, which
// keeps results independent of thread chunking.
struct Rng {
  std::uint64_t state = 0;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform-ish draw in [0, n); n > 0. The modulo bias is irrelevant at the
  // alphabet/site counts used here.
  std::uint32_t below(std::uint32_t n) {
    return static_cast<std::uint32_t>(next() % n);
  }
};

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  Rng r(a ^ (0x9e3779b97f4a7c15ull + b * 0xbf58476d1ce4e5b9ull));
  return r.next();
}

}  // namespace ccr

#endif  // CCR_RNG_HPP
