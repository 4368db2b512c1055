#pragma once

#include <cassert>
#include <cstdint>
#include <random>

namespace mazegp {

// Deterministic random source. The engine is mt19937_64 (fixed by the
// standard); the sampling helpers live here instead of <random>'s
// distributions, whose outputs are implementation-defined. Every run artifact
// must be reproducible from its seed alone.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next() { return engine_(); }

  // Uniform integer in [0, n), n >= 1. Rejection sampling, no modulo bias.
  uint64_t below(uint64_t n) {
    assert(n >= 1);
    const uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  size_t index(size_t n) { return static_cast<size_t>(below(n)); }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

  // Derives an independent child stream; deterministic in (state, stream).
  Rng split(uint64_t stream) {
    const uint64_t s = next() ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    return Rng(s);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mazegp
