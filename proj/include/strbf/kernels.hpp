#pragma once

#include <span>

namespace strbf {

enum class KernelVariant { gaussian, multiquadric, inverse_multiquadric };

/// Radial basis function family and its shape parameters. sigma is the
/// Gaussian spread, zeta the inverse-multiquadric offset; variants ignore
/// the parameter they do not use.
struct KernelSpec {
  KernelVariant variant = KernelVariant::gaussian;
  double sigma = 1.0;
  double zeta = 1.0;

  /// Throws std::invalid_argument if the active parameter is unusable
  /// (sigma <= 0 for gaussian, zeta <= 0 for inverse_multiquadric).
  void validate() const;
};

/// Sum of squared componentwise differences of two equal-length vectors.
/// Throws std::invalid_argument on a length mismatch or empty input.
double squared_distance(std::span<const double> x, std::span<const double> c);

/// Kernel response at a given squared distance d2 >= 0:
///   gaussian              exp(-d2 / sigma^2), in (0, 1]
///   multiquadric          sqrt(d2) -- the bare distance, no offset term
///   inverse_multiquadric  1 / sqrt(d2 + zeta^2), in (0, 1/zeta]
/// Taking the squared distance lets callers compute it once per neuron and
/// avoids a sqrt immediately re-squared in the gaussian path.
double kernel_eval(const KernelSpec& spec, double sq_dist);

}  // namespace strbf
