#include "strbf/rng.hpp"

#include <cmath>
#include <numbers>

namespace strbf {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t counter) {
  std::uint64_t z = base + (counter + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform01() {
  // 53 mantissa bits, shifted into (0, 1] so log() below stays finite.
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double Rng::gaussian(double mean, double stddev) {
  if (stddev == 0.0) return mean;
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double z = radius * std::cos(2.0 * std::numbers::pi * u2);
  return mean + stddev * z;
}

}  // namespace strbf
