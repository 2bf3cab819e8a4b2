#include "strbf/model.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "internal_util.hpp"

namespace strbf {

std::span<const double> CenterGrid::row(std::size_t i) const {
  return {values.data() + i * input_dim, input_dim};
}

void CenterGrid::validate() const {
  if (neuron_count == 0) throw std::invalid_argument("centers: S must be >= 1");
  if (input_dim == 0) throw std::invalid_argument("centers: D must be >= 1");
  if (values.size() != neuron_count * input_dim)
    throw std::invalid_argument("centers: value count does not match S x D");
  for (double v : values)
    if (!std::isfinite(v))
      throw std::invalid_argument("centers: non-finite entry");
}

std::size_t CenterRule::neuron_count() const {
  if (kind == Kind::explicit_list) return scalars.size();
  if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(lo) ||
      !std::isfinite(hi) || hi < lo)
    throw std::invalid_argument("centers: bad range (need lo <= hi, step > 0)");
  // Tolerate float drift when (hi - lo) is an exact multiple of step.
  return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

CenterGrid CenterRule::build(std::size_t input_dim) const {
  const std::size_t count = neuron_count();
  if (count == 0) throw std::invalid_argument("centers: empty list");
  CenterGrid grid;
  grid.neuron_count = count;
  grid.input_dim = input_dim;
  grid.values.resize(count * input_dim);
  for (std::size_t i = 0; i < count; ++i) {
    const double scalar = kind == Kind::explicit_list
                              ? scalars[i]
                              : lo + static_cast<double>(i) * step;
    for (std::size_t j = 0; j < input_dim; ++j)
      grid.values[i * input_dim + j] = scalar;
  }
  grid.validate();
  return grid;
}

void Architecture::validate() const {
  if (neuron_count == 0) throw std::invalid_argument("neurons must be >= 1");
  if (input_dim == 0) throw std::invalid_argument("input_dim must be >= 1");
  if (time_taps == 0) throw std::invalid_argument("time_taps must be >= 1");
  kernel.validate();
  if (centers.neuron_count() != neuron_count)
    throw std::invalid_argument("neurons does not match the centers rule");
}

std::span<const double> StRbfState::lag(std::size_t t) const {
  const std::size_t slot = (head + t - 1) % time_taps;
  return {buffer.data() + slot * centers.neuron_count,
          centers.neuron_count};
}

std::span<double> StRbfState::weights_for_lag(std::size_t t) {
  return {weights.data() + (t - 1) * centers.neuron_count,
          centers.neuron_count};
}

std::span<const double> StRbfState::weights_for_lag(std::size_t t) const {
  return {weights.data() + (t - 1) * centers.neuron_count,
          centers.neuron_count};
}

void StRbfState::reset_buffer() {
  std::fill(buffer.begin(), buffer.end(), 0.0);
  head = 0;
  samples_seen = 0;
}

void fill_input_window(std::span<const double> signal, std::size_t k,
                       std::span<double> window) {
  for (std::size_t j = 0; j < window.size(); ++j)
    window[j] = k >= j ? signal[k - j] : 0.0;
}

void activations_into(const CenterGrid& centers, const KernelSpec& kernel,
                      std::span<const double> x, std::span<double> out) {
  if (x.size() != centers.input_dim)
    throw std::invalid_argument("activations: input length != D");
  if (out.size() != centers.neuron_count)
    throw std::invalid_argument("activations: output length != S");
  for (std::size_t i = 0; i < centers.neuron_count; ++i)
    out[i] = kernel_eval(kernel, squared_distance(x, centers.row(i)));
}

std::vector<double> activations(const CenterGrid& centers,
                                const KernelSpec& kernel,
                                std::span<const double> x) {
  std::vector<double> out(centers.neuron_count);
  activations_into(centers, kernel, x, out);
  return out;
}

double forward_rbf(const RbfState& state, std::span<const double> x) {
  if (x.size() != state.centers.input_dim)
    throw std::invalid_argument("forward_rbf: input length != D");
  if (state.weights.size() != state.centers.neuron_count)
    throw std::invalid_argument("forward_rbf: weight length != S");
  double acc = 0.0;
  for (std::size_t i = 0; i < state.centers.neuron_count; ++i) {
    const double phi =
        kernel_eval(state.kernel, squared_distance(x, state.centers.row(i)));
    acc += state.weights[i] * phi;
  }
  return acc + state.bias;
}

void push_activation(StRbfState& state, std::span<const double> x) {
  const std::size_t s = state.centers.neuron_count;
  state.head = (state.head + state.time_taps - 1) % state.time_taps;
  activations_into(state.centers, state.kernel, x,
                   {state.buffer.data() + state.head * s, s});
  ++state.samples_seen;
}

double strbf_readout(const StRbfState& state) {
  double acc = 0.0;
  for (std::size_t t = 1; t <= state.time_taps; ++t) {
    const auto w = state.weights_for_lag(t);
    const auto phi = state.lag(t);
    for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * phi[i];
  }
  return acc + state.bias;
}

double push_and_forward_strbf(StRbfState& state, std::span<const double> x) {
  push_activation(state, x);
  return strbf_readout(state);
}

namespace {

void check_init_args(const Architecture& arch, double init_scale) {
  arch.validate();
  if (init_scale < 0.0 || !std::isfinite(init_scale))
    throw std::invalid_argument("init_scale must be >= 0");
}

}  // namespace

RbfState init_rbf_state(const Architecture& arch, Rng& rng,
                        double init_scale) {
  check_init_args(arch, init_scale);
  RbfState state;
  state.centers = arch.centers.build(arch.input_dim);
  state.kernel = arch.kernel;
  state.weights.resize(arch.neuron_count);
  for (double& w : state.weights) w = rng.gaussian(0.0, init_scale);
  state.bias = rng.gaussian(0.0, init_scale);
  return state;
}

StRbfState init_strbf_state(const Architecture& arch, Rng& rng,
                            double init_scale) {
  check_init_args(arch, init_scale);
  StRbfState state;
  state.centers = arch.centers.build(arch.input_dim);
  state.kernel = arch.kernel;
  state.time_taps = arch.time_taps;
  state.weights.resize(arch.time_taps * arch.neuron_count);
  for (double& w : state.weights) w = rng.gaussian(0.0, init_scale);
  state.bias = rng.gaussian(0.0, init_scale);
  state.buffer.assign(arch.time_taps * arch.neuron_count, 0.0);
  state.head = 0;
  state.samples_seen = 0;
  return state;
}

namespace {

using detail::fmt_g17;

const char* kernel_name(KernelVariant v) {
  switch (v) {
    case KernelVariant::gaussian: return "gaussian";
    case KernelVariant::multiquadric: return "multiquadric";
    case KernelVariant::inverse_multiquadric: return "inverse_multiquadric";
  }
  return "?";
}

KernelVariant kernel_from_name(const std::string& name) {
  if (name == "gaussian") return KernelVariant::gaussian;
  if (name == "multiquadric") return KernelVariant::multiquadric;
  if (name == "inverse_multiquadric")
    return KernelVariant::inverse_multiquadric;
  throw std::invalid_argument("snapshot: unknown kernel '" + name + "'");
}

void write_common(const CenterGrid& centers, const KernelSpec& kernel,
                  std::ostream& os) {
  os << "neurons " << centers.neuron_count << '\n';
  os << "input_dim " << centers.input_dim << '\n';
  os << "kernel " << kernel_name(kernel.variant) << '\n';
  os << "sigma " << fmt_g17(kernel.sigma) << '\n';
  os << "zeta " << fmt_g17(kernel.zeta) << '\n';
  for (std::size_t i = 0; i < centers.neuron_count; ++i) {
    os << "center " << i;
    for (double v : centers.row(i)) os << ' ' << fmt_g17(v);
    os << '\n';
  }
}

// Reads `key rest-of-line` pairs; dispatch is up to the caller.
struct SnapshotReader {
  explicit SnapshotReader(std::istream& stream) : is(stream) {}

  std::istream& is;
  std::string key, rest;

  bool next() {
    std::string line;
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      const auto space = line.find(' ');
      key = line.substr(0, space);
      rest = space == std::string::npos ? "" : line.substr(space + 1);
      return true;
    }
    return false;
  }
};

double parse_double(const std::string& text) {
  std::size_t pos = 0;
  const double v = std::stod(text, &pos);
  if (pos != text.size())
    throw std::invalid_argument("snapshot: bad number '" + text + "'");
  return v;
}

}  // namespace

void write_state_snapshot(const RbfState& state, std::ostream& os) {
  os << "kind rbf\n";
  write_common(state.centers, state.kernel, os);
  os << "bias " << fmt_g17(state.bias) << '\n';
  for (std::size_t i = 0; i < state.weights.size(); ++i)
    os << "weight " << i << ' ' << fmt_g17(state.weights[i]) << '\n';
}

void write_state_snapshot(const StRbfState& state, std::ostream& os) {
  os << "kind strbf\n";
  write_common(state.centers, state.kernel, os);
  os << "time_taps " << state.time_taps << '\n';
  os << "samples_seen " << state.samples_seen << '\n';
  os << "bias " << fmt_g17(state.bias) << '\n';
  for (std::size_t t = 1; t <= state.time_taps; ++t) {
    const auto w = state.weights_for_lag(t);
    for (std::size_t i = 0; i < w.size(); ++i)
      os << "weight " << t << ' ' << i << ' ' << fmt_g17(w[i]) << '\n';
  }
  for (std::size_t t = 1; t <= state.time_taps; ++t) {
    os << "buffer " << t;
    for (double v : state.lag(t)) os << ' ' << fmt_g17(v);
    os << '\n';
  }
}

namespace {

struct CommonFields {
  CenterGrid centers;
  KernelSpec kernel;
};

// Shared scaffolding for both snapshot readers: consumes common keys,
// forwards everything else to `handle`.
template <typename Handler>
void read_snapshot(std::istream& is, const char* expected_kind,
                   CommonFields& common, Handler&& handle) {
  SnapshotReader reader{is};
  bool saw_kind = false;
  while (reader.next()) {
    if (reader.key == "kind") {
      if (reader.rest != expected_kind)
        throw std::invalid_argument("snapshot: expected kind " +
                                    std::string(expected_kind) + ", got '" +
                                    reader.rest + "'");
      saw_kind = true;
    } else if (reader.key == "neurons") {
      common.centers.neuron_count = std::stoul(reader.rest);
    } else if (reader.key == "input_dim") {
      common.centers.input_dim = std::stoul(reader.rest);
    } else if (reader.key == "kernel") {
      common.kernel.variant = kernel_from_name(reader.rest);
    } else if (reader.key == "sigma") {
      common.kernel.sigma = parse_double(reader.rest);
    } else if (reader.key == "zeta") {
      common.kernel.zeta = parse_double(reader.rest);
    } else if (reader.key == "center") {
      std::istringstream ss(reader.rest);
      std::size_t i;
      ss >> i;
      if (common.centers.values.size() <
          (i + 1) * common.centers.input_dim)
        common.centers.values.resize((i + 1) * common.centers.input_dim);
      for (std::size_t j = 0; j < common.centers.input_dim; ++j)
        ss >> common.centers.values[i * common.centers.input_dim + j];
      if (!ss) throw std::invalid_argument("snapshot: short center row");
    } else {
      handle(reader.key, reader.rest);
    }
  }
  if (!saw_kind) throw std::invalid_argument("snapshot: missing kind line");
  common.centers.validate();
}

}  // namespace

RbfState read_rbf_snapshot(std::istream& is) {
  CommonFields common;
  RbfState state;
  read_snapshot(is, "rbf", common, [&](const std::string& key,
                                       const std::string& rest) {
    if (key == "bias") {
      state.bias = parse_double(rest);
    } else if (key == "weight") {
      std::istringstream ss(rest);
      std::size_t i;
      double v;
      ss >> i >> v;
      if (!ss) throw std::invalid_argument("snapshot: bad weight line");
      if (state.weights.size() < i + 1) state.weights.resize(i + 1);
      state.weights[i] = v;
    } else {
      throw std::invalid_argument("snapshot: unknown key '" + key + "'");
    }
  });
  state.centers = std::move(common.centers);
  state.kernel = common.kernel;
  if (state.weights.size() != state.centers.neuron_count)
    throw std::invalid_argument("snapshot: weight count != neurons");
  return state;
}

StRbfState read_strbf_snapshot(std::istream& is) {
  CommonFields common;
  StRbfState state;
  std::vector<std::pair<std::size_t, std::vector<double>>> lags;
  read_snapshot(is, "strbf", common, [&](const std::string& key,
                                         const std::string& rest) {
    std::istringstream ss(rest);
    if (key == "bias") {
      state.bias = parse_double(rest);
    } else if (key == "time_taps") {
      state.time_taps = std::stoul(rest);
    } else if (key == "samples_seen") {
      state.samples_seen = std::stoull(rest);
    } else if (key == "weight") {
      std::size_t t, i;
      double v;
      ss >> t >> i >> v;
      if (!ss) throw std::invalid_argument("snapshot: bad weight line");
      const std::size_t s = common.centers.neuron_count;
      if (state.weights.size() < t * s) state.weights.resize(t * s);
      state.weights[(t - 1) * s + i] = v;
    } else if (key == "buffer") {
      std::size_t t;
      ss >> t;
      std::vector<double> row;
      double v;
      while (ss >> v) row.push_back(v);
      lags.emplace_back(t, std::move(row));
    } else {
      throw std::invalid_argument("snapshot: unknown key '" + key + "'");
    }
  });
  state.centers = std::move(common.centers);
  state.kernel = common.kernel;
  const std::size_t s = state.centers.neuron_count;
  if (state.time_taps == 0 || state.weights.size() != state.time_taps * s)
    throw std::invalid_argument("snapshot: weight count != S x T");
  // Rebuild the ring with head = 0: slot for lag t is t - 1.
  state.buffer.assign(state.time_taps * s, 0.0);
  state.head = 0;
  for (auto& [t, row] : lags) {
    if (t == 0 || t > state.time_taps || row.size() != s)
      throw std::invalid_argument("snapshot: bad buffer line");
    for (std::size_t i = 0; i < s; ++i) state.buffer[(t - 1) * s + i] = row[i];
  }
  return state;
}

}  // namespace strbf
