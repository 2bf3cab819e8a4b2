#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "strbf/learning.hpp"

using namespace strbf;

namespace {

RbfState one_neuron_at(double center, double weight, double bias) {
  RbfState state;
  state.centers.neuron_count = 1;
  state.centers.input_dim = 1;
  state.centers.values = {center};
  state.kernel = {KernelVariant::gaussian, 1.0, 1.0};
  state.weights = {weight};
  state.bias = bias;
  return state;
}

RbfState random_rbf(Rng& rng, std::size_t s, std::size_t d, double sigma) {
  RbfState state;
  state.centers.neuron_count = s;
  state.centers.input_dim = d;
  state.centers.values.resize(s * d);
  for (double& v : state.centers.values) v = rng.gaussian(0.0, 1.5);
  state.kernel = {KernelVariant::gaussian, sigma, 1.0};
  state.weights.resize(s);
  for (double& w : state.weights) w = rng.gaussian(0.0, 1.0);
  state.bias = rng.gaussian(0.0, 1.0);
  return state;
}

StRbfState random_strbf(Rng& rng, std::size_t s, std::size_t d,
                        std::size_t t, double sigma) {
  StRbfState state;
  state.centers.neuron_count = s;
  state.centers.input_dim = d;
  state.centers.values.resize(s * d);
  for (double& v : state.centers.values) v = rng.gaussian(0.0, 1.5);
  state.kernel = {KernelVariant::gaussian, sigma, 1.0};
  state.time_taps = t;
  state.weights.resize(t * s);
  for (double& w : state.weights) w = rng.gaussian(0.0, 1.0);
  state.bias = rng.gaussian(0.0, 1.0);
  state.buffer.assign(t * s, 0.0);
  return state;
}

std::vector<double> random_x(Rng& rng, std::size_t d) {
  std::vector<double> x(d);
  for (double& v : x) v = rng.gaussian(0.0, 1.5);
  return x;
}

}  // namespace

TEST_CASE("instantaneous_cost") {
  StepResult r = instantaneous_cost(1.0, 1.0);
  CHECK(r.e == 0.0);
  CHECK(r.cost == 0.0);

  r = instantaneous_cost(1.0, 0.0);
  CHECK(r.e == 1.0);
  CHECK(r.cost == 0.5);

  // Hand evaluation: e = -1.4 - 0.6 = -2, cost = 2.
  r = instantaneous_cost(-1.4, 0.6);
  CHECK(r.e == -2.0);
  CHECK(r.cost == 2.0);

  CHECK_THROWS_AS(instantaneous_cost(std::nan(""), 0.0),
                  std::invalid_argument);
}

TEST_CASE("gd_step_rbf zero error leaves the state unchanged") {
  RbfState state = one_neuron_at(0.0, 0.7, -0.2);
  const std::vector<double> x{0.5};
  const double y = forward_rbf(state, x);
  const StepResult res = gd_step_rbf(state, x, y, GdConfig{0.5});
  CHECK(res.e == 0.0);
  CHECK(state.weights[0] == 0.7);
  CHECK(state.bias == -0.2);
}

TEST_CASE("gd_step_rbf hand evaluation at the center") {
  RbfState state = one_neuron_at(1.0, 0.0, 0.0);
  const std::vector<double> x{1.0};  // phi = 1 exactly
  const StepResult res = gd_step_rbf(state, x, 1.0, GdConfig{0.5});
  CHECK(res.y == 0.0);
  CHECK(res.e == 1.0);
  CHECK(res.cost == 0.5);
  CHECK(state.weights[0] == 0.5);
  CHECK(state.bias == 0.5);
}

TEST_CASE("gd_step_strbf hand evaluation with a two-lag buffer") {
  // One neuron at the origin; choose inputs whose activations are exactly
  // representable targets: exp(-x^2) = 0.25 then 0.5.
  StRbfState state;
  state.centers.neuron_count = 1;
  state.centers.input_dim = 1;
  state.centers.values = {0.0};
  state.kernel = {KernelVariant::gaussian, 1.0, 1.0};
  state.time_taps = 2;
  state.weights = {0.0, 0.0};
  state.bias = 0.0;
  state.buffer.assign(2, 0.0);

  push_activation(state, std::vector<double>{std::sqrt(std::log(4.0))});
  const StepResult res =
      gd_step_strbf(state, std::vector<double>{std::sqrt(std::log(2.0))},
                    1.0, GdConfig{1.0});
  CHECK(res.y == 0.0);
  CHECK(res.e == 1.0);
  CHECK(state.weights_for_lag(1)[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(state.weights_for_lag(2)[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(state.bias == 1.0);
}

TEST_CASE("gd_step_strbf zero error advances the buffer only") {
  Rng rng(3);
  StRbfState state = random_strbf(rng, 2, 2, 3, 1.0);
  const auto x = random_x(rng, 2);
  StRbfState probe = state;
  const double y = push_and_forward_strbf(probe, x);

  const std::vector<double> weights_before = state.weights;
  const std::uint64_t seen_before = state.samples_seen;
  const StepResult res = gd_step_strbf(state, x, y, GdConfig{0.1});
  CHECK(res.e == 0.0);
  CHECK(state.weights == weights_before);
  CHECK(state.samples_seen == seen_before + 1);
}

TEST_CASE("T=1 temporal training reproduces the conventional trajectory") {
  Rng rng(5);
  RbfState rbf = random_rbf(rng, 3, 2, 1.2);
  StRbfState st;
  st.centers = rbf.centers;
  st.kernel = rbf.kernel;
  st.time_taps = 1;
  st.weights = rbf.weights;
  st.bias = rbf.bias;
  st.buffer.assign(3, 0.0);

  const GdConfig gd{1e-2};
  for (int k = 0; k < 1000; ++k) {
    const auto x = random_x(rng, 2);
    const double d = rng.gaussian(0.0, 1.0);
    const StepResult a = gd_step_rbf(rbf, x, d, gd);
    const StepResult b = gd_step_strbf(st, x, d, gd);
    CHECK(std::fabs(a.y - b.y) <= 1e-12);
  }
  CHECK(rbf.weights == st.weights);
  CHECK(rbf.bias == st.bias);
}

TEST_CASE("frbf_step zero error and zero-weight reduction") {
  const FrbfConfig cfg = make_frbf_config(0.1, 0.1, 0.5, 0.9);

  RbfState state = one_neuron_at(0.0, 0.3, 0.1);
  const std::vector<double> x{0.4};
  const double y = forward_rbf(state, x);
  frbf_step(state, x, y, cfg);
  CHECK(state.weights[0] == 0.3);
  CHECK(state.bias == 0.1);

  // |0|^{1-nu} = 0: the fractional term vanishes and only the alpha-scaled
  // conventional term moves the weight.
  RbfState zero_w = one_neuron_at(1.0, 0.0, 0.0);
  const std::vector<double> at_center{1.0};
  const StepResult res = frbf_step(zero_w, at_center, 1.0, cfg);
  CHECK(res.e == 1.0);
  CHECK(zero_w.weights[0] == doctest::Approx(0.5 * 0.1 * 1.0).epsilon(1e-15));
  CHECK(zero_w.bias == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("frbf_step hand evaluation against the gamma oracle") {
  // Gamma(1.1) cross-checked against std::tgamma.
  const double gamma_11 = 0.9513507698668732;
  CHECK(std::tgamma(1.1) == doctest::Approx(gamma_11).epsilon(1e-14));

  RbfState state = one_neuron_at(1.0, 1.0, 0.0);
  const std::vector<double> x{1.0};  // phi = 1
  const FrbfConfig cfg = make_frbf_config(0.1, 0.1, 0.5, 0.9);
  const StepResult res = frbf_step(state, x, 2.0, cfg);
  CHECK(res.y == 1.0);
  CHECK(res.e == 1.0);
  // w <- 1 + alpha*eta*e + (1-alpha)*eta_v*e*|1|^{0.1}/Gamma(1.1)
  const double expected = 1.0 + 0.05 + 0.05 / gamma_11;
  CHECK(state.weights[0] == doctest::Approx(expected).epsilon(1e-12));
  CHECK(state.bias == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("frbf config validation") {
  CHECK_THROWS_AS(make_frbf_config(0.1, 0.1, 1.5, 0.9),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_frbf_config(0.1, 0.1, 0.5, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_frbf_config(0.0, 0.1, 0.5, 0.9),
                  std::invalid_argument);
  FrbfConfig stale = make_frbf_config(0.1, 0.1, 0.5, 0.9);
  stale.gamma_factor = 1.0;  // no longer Gamma(2 - nu)
  CHECK_THROWS_AS(stale.validate(), std::invalid_argument);
}

TEST_CASE("analytic update matches central finite differences") {
  Rng rng(101);
  const double h = 1e-6;
  double max_dev = 0.0;

  for (int round = 0; round < 60; ++round) {
    const std::size_t s = 1 + rng.next_u64() % 4;
    const std::size_t d = 1 + rng.next_u64() % 3;
    const double sigma = 0.5 + 1.5 * rng.uniform01();
    RbfState state = random_rbf(rng, s, d, sigma);
    const auto x = random_x(rng, d);
    const double target = rng.gaussian(0.0, 1.0);

    RbfState stepped = state;
    gd_step_rbf(stepped, x, target, GdConfig{1.0});

    RbfState probe = state;
    auto cost_at = [&](double* param, double value) {
      const double saved = *param;
      *param = value;
      const double c = instantaneous_cost(target, forward_rbf(probe, x)).cost;
      *param = saved;
      return c;
    };
    auto check_param = [&](double* probe_param, double analytic_delta) {
      const double analytic_grad = -analytic_delta;  // eta was 1
      const double fd = (cost_at(probe_param, *probe_param + h) -
                         cost_at(probe_param, *probe_param - h)) /
                        (2.0 * h);
      const double scale =
          std::max({std::fabs(analytic_grad), std::fabs(fd), 1e-3});
      max_dev = std::max(max_dev, std::fabs(analytic_grad - fd) / scale);
    };
    for (std::size_t i = 0; i < s; ++i)
      check_param(&probe.weights[i], stepped.weights[i] - state.weights[i]);
    check_param(&probe.bias, stepped.bias - state.bias);
  }
  CHECK(max_dev <= 1e-6);
}

TEST_CASE("one small step never increases the cost at the same input") {
  Rng rng(77);
  const GdConfig gd{1e-3};
  for (int round = 0; round < 40; ++round) {
    const std::size_t s = 1 + rng.next_u64() % 4;
    const std::size_t d = 1 + rng.next_u64() % 3;
    RbfState state = random_rbf(rng, s, d, 1.0);
    const auto x = random_x(rng, d);
    const double target = rng.gaussian(0.0, 1.5);
    const StepResult before = gd_step_rbf(state, x, target, gd);
    const double after =
        instantaneous_cost(target, forward_rbf(state, x)).cost;
    CHECK(after <= before.cost);
  }
  for (int round = 0; round < 40; ++round) {
    const std::size_t s = 1 + rng.next_u64() % 4;
    StRbfState state = random_strbf(rng, s, 2, 1 + rng.next_u64() % 3, 1.0);
    for (int warm = 0; warm < 3; ++warm)
      push_activation(state, random_x(rng, 2));
    const auto x = random_x(rng, 2);
    const double target = rng.gaussian(0.0, 1.5);
    const StepResult before = gd_step_strbf(state, x, target, gd);
    const double after =
        instantaneous_cost(target, strbf_readout(state)).cost;
    CHECK(after <= before.cost);
  }
}

TEST_CASE("update magnitude bound holds exactly") {
  Rng rng(55);
  for (int round = 0; round < 40; ++round) {
    const std::size_t s = 1 + rng.next_u64() % 4;
    const std::size_t d = 1 + rng.next_u64() % 3;
    RbfState state = random_rbf(rng, s, d, 1.0);
    // Zero weights make the post-step weight equal the raw increment, so
    // the bound can be asserted without any rounding slack.
    std::fill(state.weights.begin(), state.weights.end(), 0.0);
    const auto x = random_x(rng, d);
    const auto phi = activations(state.centers, state.kernel, x);
    const double max_phi = *std::max_element(phi.begin(), phi.end());
    const double eta = 0.25;
    const StepResult res = gd_step_rbf(state, x, rng.gaussian(0.0, 2.0),
                                       GdConfig{eta});
    for (std::size_t i = 0; i < s; ++i)
      CHECK(std::fabs(state.weights[i]) <= eta * std::fabs(res.e) * max_phi);
  }
}

TEST_CASE("permuting neurons permutes the update and keeps y") {
  Rng rng(91);
  const std::size_t s = 4, d = 2;
  RbfState state = random_rbf(rng, s, d, 1.0);
  const auto x = random_x(rng, d);
  const double target = rng.gaussian(0.0, 1.0);

  const std::vector<std::size_t> perm{2, 0, 3, 1};
  RbfState permuted;
  permuted.kernel = state.kernel;
  permuted.centers.neuron_count = s;
  permuted.centers.input_dim = d;
  permuted.centers.values.resize(s * d);
  permuted.weights.resize(s);
  permuted.bias = state.bias;
  for (std::size_t i = 0; i < s; ++i) {
    permuted.weights[i] = state.weights[perm[i]];
    for (std::size_t j = 0; j < d; ++j)
      permuted.centers.values[i * d + j] =
          state.centers.values[perm[i] * d + j];
  }

  const GdConfig gd{0.05};
  const StepResult a = gd_step_rbf(state, x, target, gd);
  const StepResult b = gd_step_rbf(permuted, x, target, gd);
  CHECK(a.y == doctest::Approx(b.y).epsilon(1e-12));
  for (std::size_t i = 0; i < s; ++i)
    CHECK(permuted.weights[i] ==
          doctest::Approx(state.weights[perm[i]]).epsilon(1e-12));
}

TEST_CASE("runaway steps raise divergence errors") {
  RbfState state = one_neuron_at(0.0, 1e308, 0.0);
  const std::vector<double> x{0.0};
  CHECK_THROWS_AS(gd_step_rbf(state, x, -1e308, GdConfig{1e300}),
                  divergence_error);
}
