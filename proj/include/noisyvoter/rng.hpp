// rng.hpp — seeded randomness: substream derivation and uniform variate helpers.
//
// Determinism contract: every stochastic operation takes a 64-bit seed and is a
// pure function of (inputs, seed). Replicate k of a batch draws from
// substream(seed, k), so batch results are bit-identical regardless of
// execution order or thread count. Variate transforms (u01, exponential,
// below) are implemented here rather than via std <random> distributions,
// whose output is implementation-defined and not stable across platforms.
#pragma once

#include <cmath>
#include <cstdint>

namespace nv {

// splitmix64 finalizer: the documented avalanche mix used everywhere a
// (seed, index) pair must be turned into an independent-looking stream.
inline uint64_t mix64(uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Substream k of a master seed. Indices are cheap and need not be contiguous;
// callers reserve disjoint index ranges for distinct purposes.
inline uint64_t substream(uint64_t seed, uint64_t k) {
  return mix64(seed ^ mix64(k + 0x632BE59BD9B4E019ull));
}

// splitmix64 stream generator. Construction is two integer ops, so building
// one generator per replicate costs nothing; state is a single counter, so a
// given seed yields the same stream on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t bits() {
    state_ += 0x9E3779B97F4A7C15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform in [0,1), 53 random bits
  double u01() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  // uniform integer in [0,n); n is a vertex count or color count, far below
  // 2^26, so the floor(u*n) bias is below 2^-27 and irrelevant next to any
  // Monte-Carlo error in this artifact
  int below(int n) {
    int i = static_cast<int>(u01() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

  // Exp(rate); rate > 0. -log1p(-u) keeps full precision near u = 0.
  double exponential(double rate) { return -log1p(-u01()) / rate; }

  bool coin(double p) { return u01() < p; }

 private:
  uint64_t state_;
};

}  // namespace nv
