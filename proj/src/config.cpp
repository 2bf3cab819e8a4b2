#include "strbf/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace strbf {

namespace {

const std::vector<std::string> kKnownKeys = {
    "model",         "neurons",        "input_dim",
    "time_taps",     "kernel",         "sigma",
    "zeta",          "centers",        "eta",
    "eta_v",         "alpha",          "nu",
    "epochs",        "trials",         "seed",
    "init_scale",    "q1",             "q2",
    "q3",            "q4",             "q5",
    "noise_variance", "train_length",  "train_half_period",
    "train_amplitude", "test_length",  "test_half_period",
    "test_amplitude", "test_target"};

std::string_view trim(std::string_view text) {
  const auto from = text.find_first_not_of(" \t\r");
  if (from == std::string_view::npos) return {};
  const auto to = text.find_last_not_of(" \t\r");
  return text.substr(from, to - from + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value,
                            const char* expected) {
  throw std::invalid_argument("config key '" + std::string(key) +
                              "': expected " + expected + ", got '" +
                              std::string(value) + "'");
}

double to_double(std::string_view key, std::string_view value) {
  const std::string text(value);
  std::size_t pos = 0;
  double parsed = 0.0;
  try {
    parsed = std::stod(text, &pos);
  } catch (const std::exception&) {
    bad_value(key, value, "a number");
  }
  if (pos != text.size() || !std::isfinite(parsed))
    bad_value(key, value, "a finite number");
  return parsed;
}

std::uint64_t to_u64(std::string_view key, std::string_view value) {
  const std::string text(value);
  std::size_t pos = 0;
  std::uint64_t parsed = 0;
  try {
    parsed = std::stoull(text, &pos);
  } catch (const std::exception&) {
    bad_value(key, value, "a nonnegative integer");
  }
  if (pos != text.size()) bad_value(key, value, "a nonnegative integer");
  return parsed;
}

std::size_t to_positive(std::string_view key, std::string_view value) {
  const std::uint64_t parsed = to_u64(key, value);
  if (parsed == 0) bad_value(key, value, "a positive integer");
  return static_cast<std::size_t>(parsed);
}

KernelVariant to_kernel(std::string_view key, std::string_view value) {
  if (value == "gaussian") return KernelVariant::gaussian;
  if (value == "multiquadric") return KernelVariant::multiquadric;
  if (value == "inverse_multiquadric")
    return KernelVariant::inverse_multiquadric;
  bad_value(key, value,
            "gaussian, multiquadric, or inverse_multiquadric");
}

CenterRule to_centers(std::string_view key, std::string_view value) {
  CenterRule rule;
  if (value.rfind("range:", 0) == 0) {
    std::string rest(value.substr(6));
    std::replace(rest.begin(), rest.end(), ':', ' ');
    std::istringstream ss(rest);
    if (!(ss >> rule.lo >> rule.hi >> rule.step) || !(ss >> std::ws).eof())
      bad_value(key, value, "range:<lo>:<hi>:<step>");
    rule.kind = CenterRule::Kind::scalar_range;
    return rule;
  }
  if (value.rfind("list:", 0) == 0) {
    rule.kind = CenterRule::Kind::explicit_list;
    std::string rest(value.substr(5));
    std::replace(rest.begin(), rest.end(), ',', ' ');
    std::istringstream ss(rest);
    double v = 0.0;
    while (ss >> v) rule.scalars.push_back(v);
    if (!ss.eof() || rule.scalars.empty())
      bad_value(key, value, "list:<v0>,<v1>,...");
    return rule;
  }
  bad_value(key, value, "range:<lo>:<hi>:<step> or list:<v0>,<v1>,...");
}

}  // namespace

ModelKind parse_model_kind(std::string_view text) {
  if (text == "rbf") return ModelKind::rbf;
  if (text == "frbf") return ModelKind::frbf;
  if (text == "strbf") return ModelKind::strbf;
  throw std::invalid_argument("config key 'model': expected rbf, frbf, or "
                              "strbf, got '" +
                              std::string(text) + "'");
}

bool ConfigBuilder::is_known_key(std::string_view key) {
  return std::find(kKnownKeys.begin(), kKnownKeys.end(), key) !=
         kKnownKeys.end();
}

const std::vector<std::string>& ConfigBuilder::known_keys() {
  return kKnownKeys;
}

void ConfigBuilder::set(std::string_view key, std::string_view value) {
  if (!is_known_key(key))
    throw std::invalid_argument("unknown config key '" + std::string(key) +
                                "'");
  entries_.emplace_back(std::string(key), std::string(trim(value)));
}

void ConfigBuilder::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open config file " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument(path.string() + ":" +
                                  std::to_string(line_no) +
                                  ": expected key = value");
    try {
      set(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    } catch (const std::invalid_argument& err) {
      throw std::invalid_argument(path.string() + ":" +
                                  std::to_string(line_no) + ": " +
                                  err.what());
    }
  }
}

ExperimentConfig ConfigBuilder::resolve() const {
  // The model decides the defaults, so it resolves first no matter where it
  // appeared in the entry list.
  ModelKind kind = ModelKind::rbf;
  for (const auto& [key, value] : entries_)
    if (key == "model") kind = parse_model_kind(value);

  ExperimentConfig cfg = default_config(kind);
  std::optional<std::size_t> explicit_neurons;
  double frbf_eta = cfg.frbf.eta;
  double frbf_eta_v = cfg.frbf.eta_v;
  double frbf_alpha = cfg.frbf.alpha;
  double frbf_nu = cfg.frbf.nu;

  for (const auto& [key, value] : entries_) {
    if (key == "model") {
      // already applied
    } else if (key == "neurons") {
      explicit_neurons = to_positive(key, value);
    } else if (key == "input_dim") {
      cfg.arch.input_dim = to_positive(key, value);
    } else if (key == "time_taps") {
      cfg.arch.time_taps = to_positive(key, value);
    } else if (key == "kernel") {
      cfg.arch.kernel.variant = to_kernel(key, value);
    } else if (key == "sigma") {
      cfg.arch.kernel.sigma = to_double(key, value);
    } else if (key == "zeta") {
      cfg.arch.kernel.zeta = to_double(key, value);
    } else if (key == "centers") {
      cfg.arch.centers = to_centers(key, value);
    } else if (key == "eta") {
      cfg.eta = to_double(key, value);
      if (cfg.eta > 0.0) frbf_eta = cfg.eta;
    } else if (key == "eta_v") {
      frbf_eta_v = to_double(key, value);
    } else if (key == "alpha") {
      frbf_alpha = to_double(key, value);
    } else if (key == "nu") {
      frbf_nu = to_double(key, value);
    } else if (key == "epochs") {
      cfg.epochs = to_positive(key, value);
    } else if (key == "trials") {
      cfg.trials = to_positive(key, value);
    } else if (key == "seed") {
      cfg.base_seed = to_u64(key, value);
    } else if (key == "init_scale") {
      cfg.init_scale = to_double(key, value);
    } else if (key == "q1") {
      cfg.plant.q1 = to_double(key, value);
    } else if (key == "q2") {
      cfg.plant.q2 = to_double(key, value);
    } else if (key == "q3") {
      cfg.plant.q3 = to_double(key, value);
    } else if (key == "q4") {
      cfg.plant.q4 = to_double(key, value);
    } else if (key == "q5") {
      cfg.plant.q5 = to_double(key, value);
    } else if (key == "noise_variance") {
      cfg.noise.variance = to_double(key, value);
    } else if (key == "train_length") {
      cfg.train_signal.length = to_positive(key, value);
    } else if (key == "train_half_period") {
      cfg.train_signal.half_period = to_positive(key, value);
    } else if (key == "train_amplitude") {
      cfg.train_signal.amplitude = to_double(key, value);
    } else if (key == "test_length") {
      cfg.test_signal.length = to_positive(key, value);
    } else if (key == "test_half_period") {
      cfg.test_signal.half_period = to_positive(key, value);
    } else if (key == "test_amplitude") {
      cfg.test_signal.amplitude = to_double(key, value);
    } else if (key == "test_target") {
      if (value == "clean")
        cfg.test_target = TestTarget::clean;
      else if (value == "noisy")
        cfg.test_target = TestTarget::noisy;
      else
        bad_value(key, value, "clean or noisy");
    }
  }

  if (kind != ModelKind::strbf) cfg.arch.time_taps = 1;
  cfg.frbf = make_frbf_config(frbf_eta, frbf_eta_v, frbf_alpha, frbf_nu);

  const std::size_t rule_count = cfg.arch.centers.neuron_count();
  if (explicit_neurons && *explicit_neurons != rule_count)
    throw std::invalid_argument(
        "config key 'neurons': value " + std::to_string(*explicit_neurons) +
        " conflicts with the centers rule (" + std::to_string(rule_count) +
        " centers)");
  cfg.arch.neuron_count = rule_count;

  cfg.validate();
  return cfg;
}

}  // namespace strbf
