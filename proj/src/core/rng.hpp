#pragma once

#include <cstdint>
#include <random>

namespace kt {

// Deterministic RNG used by scans and the selftest suites. mt19937_64 output
// is fully specified by the standard; distributions are hand-rolled because
// std::uniform_int_distribution is not reproducible across implementations.
class Rng {
public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next() { return engine_(); }

  // Uniform integer in [lo, hi], inclusive. Modulo bias is irrelevant at the
  // range sizes used here.
  int64_t uniform_int(int64_t lo, int64_t hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int64_t>(engine_() % span);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool coin() { return (engine_() & 1u) != 0; }

private:
  std::mt19937_64 engine_;
};

}  // namespace kt
