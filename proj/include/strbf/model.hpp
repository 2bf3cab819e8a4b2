#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "strbf/kernels.hpp"
#include "strbf/rng.hpp"

namespace strbf {

/// Row-major S x D matrix of kernel centers.
struct CenterGrid {
  std::size_t neuron_count = 0;  // S
  std::size_t input_dim = 0;     // D
  std::vector<double> values;    // S * D, row-major

  std::span<const double> row(std::size_t i) const;
  void validate() const;
};

/// Center construction rule: either the scalar values lo, lo+step, ..., hi,
/// or an explicit scalar list. Each scalar is replicated across every input
/// dimension to form one center row.
struct CenterRule {
  enum class Kind { scalar_range, explicit_list };
  Kind kind = Kind::scalar_range;
  double lo = -5.0;
  double hi = 5.0;
  double step = 2.0;
  std::vector<double> scalars;  // explicit_list only

  std::size_t neuron_count() const;
  CenterGrid build(std::size_t input_dim) const;
};

struct Architecture {
  std::size_t neuron_count = 6;  // S; must agree with the center rule
  std::size_t input_dim = 3;     // D
  std::size_t time_taps = 1;     // T
  KernelSpec kernel;
  CenterRule centers;

  void validate() const;
};

/// Conventional network: y = sum_i w_i * phi_i(||x - c_i||) + b.
struct RbfState {
  CenterGrid centers;
  KernelSpec kernel;
  std::vector<double> weights;  // length S
  double bias = 0.0;
};

/// Temporal network: y = sum_i sum_t w[i,t] * phi_t[i] + b, where phi_t is
/// the activation vector computed t-1 samples ago (t = 1 is the current
/// sample). Lags delay the activation vector, not the input window, so each
/// lag shares a single kernel evaluation per sample; delaying the input
/// window instead would be the other defensible reading of a temporal
/// kernel expansion.
///
/// Weights are stored lag-major: row t (length S) aligns with the buffered
/// activation vector at lag t+1. The buffer is a ring; `head` indexes the
/// most recent slot. Slots not yet written hold zero vectors, so the first
/// samples see a silent pre-history.
struct StRbfState {
  CenterGrid centers;
  KernelSpec kernel;
  std::size_t time_taps = 1;    // T
  std::vector<double> weights;  // T * S, lag-major
  double bias = 0.0;
  std::vector<double> buffer;   // T * S ring of activation vectors
  std::size_t head = 0;
  std::uint64_t samples_seen = 0;

  std::span<const double> lag(std::size_t t) const;          // t in [1, T]
  std::span<double> weights_for_lag(std::size_t t);          // t in [1, T]
  std::span<const double> weights_for_lag(std::size_t t) const;
  void reset_buffer();
};

/// Tapped-delay window [r(k), r(k-1), ..., r(k-D+1)]; indices before the
/// start of the signal read as zero.
void fill_input_window(std::span<const double> signal, std::size_t k,
                       std::span<double> window);

/// Activation vector: out[i] = kernel(||x - c_i||^2).
void activations_into(const CenterGrid& centers, const KernelSpec& kernel,
                      std::span<const double> x, std::span<double> out);
std::vector<double> activations(const CenterGrid& centers,
                                const KernelSpec& kernel,
                                std::span<const double> x);

double forward_rbf(const RbfState& state, std::span<const double> x);

/// Computes the activation vector for x and pushes it into the ring buffer,
/// evicting the oldest lag. Increments samples_seen.
void push_activation(StRbfState& state, std::span<const double> x);

/// Readout over the current buffer contents: sum_t w_t . phi_t + b.
/// Does not advance the buffer.
double strbf_readout(const StRbfState& state);

/// push_activation followed by strbf_readout; the temporal forward pass.
double push_and_forward_strbf(StRbfState& state, std::span<const double> x);

/// Fresh states with weights and bias drawn i.i.d. from N(0, init_scale^2)
/// in storage order (weights, then bias); init_scale == 0 yields exact
/// zeros. Centers come deterministically from the rule; the buffer starts
/// zeroed. Throws std::invalid_argument on a bad architecture or negative
/// init_scale.
RbfState init_rbf_state(const Architecture& arch, Rng& rng, double init_scale);
StRbfState init_strbf_state(const Architecture& arch, Rng& rng,
                            double init_scale);

/// Flat text snapshot, one `key value...` line per parameter, 17 significant
/// digits. Keys: kind, neurons, input_dim, time_taps, kernel, sigma, zeta,
/// samples_seen, bias, center <i> <d0..>, weight <i> <v> (rbf),
/// weight <t> <i> <v> (strbf), buffer <t> <a0..>.
void write_state_snapshot(const RbfState& state, std::ostream& os);
void write_state_snapshot(const StRbfState& state, std::ostream& os);
RbfState read_rbf_snapshot(std::istream& is);
StRbfState read_strbf_snapshot(std::istream& is);

}  // namespace strbf
