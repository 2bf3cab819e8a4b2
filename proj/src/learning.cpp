#include "strbf/learning.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace strbf {

void GdConfig::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta))
    throw std::invalid_argument("eta must be positive and finite");
}

FrbfConfig make_frbf_config(double eta, double eta_v, double alpha,
                            double nu) {
  FrbfConfig cfg;
  cfg.eta = eta;
  cfg.eta_v = eta_v;
  cfg.alpha = alpha;
  cfg.nu = nu;
  cfg.gamma_factor = std::tgamma(2.0 - nu);
  cfg.validate();
  return cfg;
}

void FrbfConfig::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta))
    throw std::invalid_argument("eta must be positive and finite");
  if (!(eta_v > 0.0) || !std::isfinite(eta_v))
    throw std::invalid_argument("eta_v must be positive and finite");
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha must lie in [0, 1]");
  if (!(nu > 0.0 && nu < 1.0))
    throw std::invalid_argument("nu must lie in (0, 1)");
  const double expected = std::tgamma(2.0 - nu);
  if (!(std::fabs(gamma_factor - expected) <= 1e-12 * std::fabs(expected)))
    throw std::invalid_argument(
        "gamma_factor does not equal Gamma(2 - nu); use make_frbf_config");
}

StepResult instantaneous_cost(double d, double y) {
  if (!std::isfinite(d) || !std::isfinite(y))
    throw std::invalid_argument("instantaneous_cost: non-finite input");
  StepResult r;
  r.y = y;
  r.e = d - y;
  r.cost = 0.5 * r.e * r.e;
  return r;
}

namespace {

void check_finite_params(std::span<const double> weights, double bias) {
  for (double w : weights)
    if (!std::isfinite(w))
      throw divergence_error("update produced a non-finite weight");
  if (!std::isfinite(bias))
    throw divergence_error("update produced a non-finite bias");
}

StepResult cost_or_diverged(double d, double y) {
  if (!std::isfinite(y))
    throw divergence_error("model output is non-finite");
  return instantaneous_cost(d, y);
}

}  // namespace

StepResult gd_step_rbf(RbfState& state, std::span<const double> x, double d,
                       const GdConfig& cfg) {
  std::vector<double> phi = activations(state.centers, state.kernel, x);
  double y = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) y += state.weights[i] * phi[i];
  y += state.bias;
  const StepResult res = cost_or_diverged(d, y);
  const double scale = cfg.eta * res.e;
  for (std::size_t i = 0; i < phi.size(); ++i)
    state.weights[i] += scale * phi[i];
  state.bias += scale;
  check_finite_params(state.weights, state.bias);
  return res;
}

StepResult gd_step_strbf(StRbfState& state, std::span<const double> x,
                         double d, const GdConfig& cfg) {
  const double y = push_and_forward_strbf(state, x);
  const StepResult res = cost_or_diverged(d, y);
  const double scale = cfg.eta * res.e;
  for (std::size_t t = 1; t <= state.time_taps; ++t) {
    const auto phi = state.lag(t);
    const auto w = state.weights_for_lag(t);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += scale * phi[i];
  }
  state.bias += scale;
  check_finite_params(state.weights, state.bias);
  return res;
}

StepResult frbf_step(RbfState& state, std::span<const double> x, double d,
                     const FrbfConfig& cfg) {
  cfg.validate();
  std::vector<double> phi = activations(state.centers, state.kernel, x);
  double y = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) y += state.weights[i] * phi[i];
  y += state.bias;
  const StepResult res = cost_or_diverged(d, y);
  const double conv = cfg.alpha * cfg.eta * res.e;
  const double frac = (1.0 - cfg.alpha) * cfg.eta_v * res.e / cfg.gamma_factor;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double w = state.weights[i];
    state.weights[i] +=
        conv * phi[i] + frac * phi[i] * std::pow(std::fabs(w), 1.0 - cfg.nu);
  }
  state.bias += cfg.eta * res.e;
  check_finite_params(state.weights, state.bias);
  return res;
}

}  // namespace strbf
