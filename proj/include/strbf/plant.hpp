#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "strbf/rng.hpp"

namespace strbf {

/// Benchmark system coefficients:
///   y(k) = q1 r(k) + q2 r(k-1) + q3 r(k-2)
///        + q4 [cos(q5 r(k)) + exp(-|r(k)|)] + noise
struct PlantCoeffs {
  double q1 = 2.0;
  double q2 = -0.5;
  double q3 = -0.1;
  double q4 = -0.7;
  double q5 = 3.0;
  void validate() const;
};

struct NoiseSpec {
  double variance = 0.1;  // sigma_d^2
  void validate() const;
};

/// Square wave: +amplitude for the first half_period samples, -amplitude for
/// the next, alternating until `length` samples are emitted.
struct SignalSpec {
  std::size_t length = 1000;
  std::size_t half_period = 250;
  double amplitude = 1.0;
  void validate() const;
};

double plant_output(const PlantCoeffs& coeffs, double r_k, double r_km1,
                    double r_km2, double noise);

std::vector<double> gen_square(const SignalSpec& spec);

/// Zero-mean Gaussian draw with the given variance; variance 0 returns
/// exactly 0 (and consumes nothing). Throws on negative variance.
double gaussian_noise(Rng& rng, double variance);

/// Streams the input through the plant with zero pre-history and one noise
/// draw per sample.
std::vector<double> run_plant(const PlantCoeffs& coeffs,
                              std::span<const double> input,
                              const NoiseSpec& noise, Rng& rng);

}  // namespace strbf
