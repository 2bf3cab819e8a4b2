#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "strbf/harness.hpp"

namespace strbf {

/// Builds an ExperimentConfig from flat `key = value` settings with the
/// precedence: built-in defaults < config file < later set() calls. Unknown
/// keys and malformed values throw std::invalid_argument naming the key.
///
/// Keys: model, neurons, input_dim, time_taps, kernel, sigma, zeta, centers,
/// eta, eta_v, alpha, nu, epochs, trials, seed, init_scale, q1..q5,
/// noise_variance, train_length, train_half_period, train_amplitude,
/// test_length, test_half_period, test_amplitude, test_target.
///
/// `centers` accepts `range:<lo>:<hi>:<step>` or `list:v0,v1,...`; scalars
/// are replicated across the input dimensions. Model-dependent defaults
/// (eta, time_taps) resolve after the final model value is known, and
/// time_taps is forced to 1 for rbf/frbf.
class ConfigBuilder {
 public:
  /// Records one setting; the key is validated immediately, the value when
  /// resolve() runs.
  void set(std::string_view key, std::string_view value);

  /// Loads `key = value` lines ('#' comments and blank lines allowed).
  /// Errors carry the path and line number.
  void load_file(const std::filesystem::path& path);

  ExperimentConfig resolve() const;

  static bool is_known_key(std::string_view key);
  static const std::vector<std::string>& known_keys();

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

ModelKind parse_model_kind(std::string_view text);  // "rbf"|"frbf"|"strbf"

}  // namespace strbf
