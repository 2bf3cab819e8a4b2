#include "strbf/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "strbf/learning.hpp"
#include "strbf/model.hpp"
#include "strbf/rng.hpp"

namespace strbf {

namespace {

// Deviation normalized so that `dev <= tolerance` is exactly the pass rule
// |analytic - fd| <= max(tolerance * max(|analytic|, |fd|), 1e-9).
double deviation(double analytic, double fd, double tolerance) {
  const double floor_scale = 1e-9 / tolerance;
  const double scale =
      std::max({std::fabs(analytic), std::fabs(fd), floor_scale});
  return std::fabs(analytic - fd) / scale;
}

Architecture random_arch(Rng& rng, std::size_t time_taps_max) {
  Architecture arch;
  arch.neuron_count = 1 + static_cast<std::size_t>(rng.next_u64() % 4);
  arch.input_dim = 1 + static_cast<std::size_t>(rng.next_u64() % 3);
  arch.time_taps =
      1 + static_cast<std::size_t>(rng.next_u64() % time_taps_max);
  arch.kernel.variant = KernelVariant::gaussian;
  arch.kernel.sigma = 0.5 + 1.5 * rng.uniform01();
  arch.centers.kind = CenterRule::Kind::explicit_list;
  for (std::size_t i = 0; i < arch.neuron_count; ++i)
    arch.centers.scalars.push_back(rng.gaussian(0.0, 1.0));
  return arch;
}

std::vector<double> random_vector(Rng& rng, std::size_t n, double scale) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.gaussian(0.0, scale);
  return v;
}

struct RoundResult {
  double max_dev = 0.0;
  std::size_t params = 0;
};

void track(RoundResult& round, double analytic, double fd, double tol) {
  round.max_dev = std::max(round.max_dev, deviation(analytic, fd, tol));
  ++round.params;
}

// Central finite differences of the instantaneous cost through the forward
// path only; the production update never runs inside `cost`.
template <typename Cost>
double central_diff(double& param, double h, const Cost& cost) {
  const double saved = param;
  param = saved + h;
  const double up = cost();
  param = saved - h;
  const double down = cost();
  param = saved;
  return (up - down) / (2.0 * h);
}

RoundResult check_rbf(Rng& rng, const GradCheckConfig& cfg, bool fractional) {
  const Architecture arch = random_arch(rng, 1);
  RbfState state;
  state.centers = arch.centers.build(arch.input_dim);
  state.kernel = arch.kernel;
  state.weights = random_vector(rng, arch.neuron_count, 1.0);
  state.bias = rng.gaussian(0.0, 1.0);
  const std::vector<double> x = random_vector(rng, arch.input_dim, 1.0);
  const double d = rng.gaussian(0.0, 1.0);

  // Analytic gradient extracted from the production step at unit step size:
  // delta = -grad for the conventional rule (alpha = 1 for the fractional
  // path, which reduces it to the conventional component).
  RbfState stepped = state;
  if (fractional)
    frbf_step(stepped, x, d, make_frbf_config(1.0, 1.0, 1.0, 0.9));
  else
    gd_step_rbf(stepped, x, d, GdConfig{1.0});

  RbfState probe = state;
  const auto cost = [&] {
    return instantaneous_cost(d, forward_rbf(probe, x)).cost;
  };

  RoundResult round;
  for (std::size_t i = 0; i < state.weights.size(); ++i) {
    double analytic = -(stepped.weights[i] - state.weights[i]);
    if (cfg.inject_sign_fault) analytic = -analytic;
    track(round, analytic, central_diff(probe.weights[i], cfg.fd_step, cost),
          cfg.tolerance);
  }
  track(round, -(stepped.bias - state.bias),
        central_diff(probe.bias, cfg.fd_step, cost), cfg.tolerance);
  return round;
}

RoundResult check_strbf(Rng& rng, const GradCheckConfig& cfg) {
  const Architecture arch = random_arch(rng, 3);
  StRbfState state;
  state.centers = arch.centers.build(arch.input_dim);
  state.kernel = arch.kernel;
  state.time_taps = arch.time_taps;
  state.weights =
      random_vector(rng, arch.time_taps * arch.neuron_count, 1.0);
  state.bias = rng.gaussian(0.0, 1.0);
  state.buffer.assign(arch.time_taps * arch.neuron_count, 0.0);

  // Warm the ring so every lag holds a real activation vector.
  std::vector<double> x(arch.input_dim);
  for (std::size_t t = 0; t < arch.time_taps; ++t) {
    for (double& v : x) v = rng.gaussian(0.0, 1.0);
    push_activation(state, x);
  }
  for (double& v : x) v = rng.gaussian(0.0, 1.0);
  const double d = rng.gaussian(0.0, 1.0);

  StRbfState stepped = state;
  gd_step_strbf(stepped, x, d, GdConfig{1.0});

  // The step pushed x before reading out; give the probe the same view.
  StRbfState probe = state;
  push_activation(probe, x);
  const auto cost = [&] {
    return instantaneous_cost(d, strbf_readout(probe)).cost;
  };

  RoundResult round;
  for (std::size_t i = 0; i < state.weights.size(); ++i) {
    double analytic = -(stepped.weights[i] - state.weights[i]);
    if (cfg.inject_sign_fault) analytic = -analytic;
    track(round, analytic, central_diff(probe.weights[i], cfg.fd_step, cost),
          cfg.tolerance);
  }
  track(round, -(stepped.bias - state.bias),
        central_diff(probe.bias, cfg.fd_step, cost), cfg.tolerance);
  return round;
}

}  // namespace

GradCheckReport run_gradcheck(const GradCheckConfig& cfg) {
  GradCheckReport report;
  for (std::size_t r = 0; r < cfg.rounds; ++r) {
    Rng rng(derive_seed(cfg.seed, r));
    RoundResult round;
    switch (r % 3) {
      case 0: round = check_rbf(rng, cfg, /*fractional=*/false); break;
      case 1: round = check_rbf(rng, cfg, /*fractional=*/true); break;
      default: round = check_strbf(rng, cfg); break;
    }
    report.max_rel_deviation =
        std::max(report.max_rel_deviation, round.max_dev);
    report.params_checked += round.params;
    ++report.rounds;
  }
  report.pass = report.max_rel_deviation <= cfg.tolerance;
  return report;
}

}  // namespace strbf
