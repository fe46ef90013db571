#ifndef LEAVITT_RNG_HPP
#define LEAVITT_RNG_HPP

#include <cstdint>

namespace leavitt {

/// Deterministic seeded generator (splitmix64).  All sampled sweeps in the
/// library and the CLI draw from this, so a report is a pure function of
/// (inputs, seed).
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

  long long range(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
};

}  // namespace leavitt

#endif
