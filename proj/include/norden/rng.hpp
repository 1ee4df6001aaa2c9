#pragma once

#include <cstdint>
#include <random>

namespace norden {

/// Seeded PRNG with a fully pinned output stream: std::mt19937_64 raw draws
/// mapped to doubles via the top 53 bits. Identical seeds give identical
/// streams on every conforming standard library, which keeps generated
/// models byte-reproducible.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n).
  int below(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace norden
