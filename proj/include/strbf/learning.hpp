#pragma once

#include <span>
#include <stdexcept>

#include "strbf/model.hpp"

namespace strbf {

struct GdConfig {
  double eta = 1e-2;  // step size
  void validate() const;
};

/// Mixed conventional/fractional step configuration. gamma_factor caches
/// Gamma(2 - nu) so the hot loop avoids tgamma; make_frbf_config fills it.
struct FrbfConfig {
  double eta = 2e-5;
  double eta_v = 2e-5;
  double alpha = 0.5;        // convex mix: 1 = purely conventional
  double nu = 0.9;           // fractional order, in (0, 1)
  double gamma_factor = 0.0; // Gamma(2 - nu)
  void validate() const;
};
FrbfConfig make_frbf_config(double eta, double eta_v, double alpha, double nu);

/// One sample's output, instantaneous error, and cost e^2 / 2.
struct StepResult {
  double y = 0.0;
  double e = 0.0;
  double cost = 0.0;
};

/// Thrown when a training step produces a non-finite output or parameter.
class divergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

StepResult instantaneous_cost(double d, double y);

/// LMS-style update: y and e come from the pre-update parameters, then
/// w_i += eta * e * phi_i and b += eta * e.
StepResult gd_step_rbf(RbfState& state, std::span<const double> x, double d,
                       const GdConfig& cfg);

/// Temporal variant: pushes the new activation (advancing the ring buffer),
/// reads out y, then updates w[i,t] += eta * e * phi_t[i] and b += eta * e
/// against the same buffer contents that produced y.
StepResult gd_step_strbf(StRbfState& state, std::span<const double> x,
                         double d, const GdConfig& cfg);

/// Fractional-LMS family step, a reconstruction:
///   w_i += alpha * eta * e * phi_i
///        + (1 - alpha) * eta_v * e * phi_i * |w_i|^(1 - nu) / Gamma(2 - nu)
///   b   += eta * e
/// |w_i| keeps the fractional power real for negative weights, and the bias
/// uses the conventional rule only (a signed bias makes fractional powers
/// ill-defined).
StepResult frbf_step(RbfState& state, std::span<const double> x, double d,
                     const FrbfConfig& cfg);

}  // namespace strbf
