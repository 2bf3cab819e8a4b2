#pragma once

#include <cstdint>
#include <random>

namespace strbf {

// Derives an independent stream seed from (base, counter) with a SplitMix64
// finalizer, so unit-of-work k is reproducible without running units 0..k-1.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t counter);

/// Deterministic random source. The engine is std::mt19937_64 (bit-exact
/// across platforms); distributions are implemented here rather than with
/// std:: distribution objects, whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in (0, 1].
  double uniform01();

  /// Gaussian draw via Box-Muller (two uniforms per draw, cosine branch).
  /// stddev == 0 returns mean exactly and consumes nothing.
  double gaussian(double mean, double stddev);

 private:
  std::mt19937_64 engine_;
};

}  // namespace strbf
