// Command-line front end for the spatio-temporal RBF benchmark. Talks to the
// library exclusively through the C API in strbf/strbf.h.

#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "strbf/strbf.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;    // usage or configuration errors
constexpr int kExitRuntime = 2;  // divergence or I/O failures

struct ConfigDeleter {
  void operator()(strbf_config* c) const { strbf_config_destroy(c); }
};
struct ResultDeleter {
  void operator()(strbf_result* r) const { strbf_result_destroy(r); }
};
using ConfigPtr = std::unique_ptr<strbf_config, ConfigDeleter>;
using ResultPtr = std::unique_ptr<strbf_result, ResultDeleter>;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  unsigned threads = 0;
  // Flag overrides in (key, pointer-to-storage) form; applied after the
  // config file so the precedence is defaults < file < flags.
  std::vector<std::pair<std::string, std::shared_ptr<std::string>>> overrides;
};

// Every experiment key becomes one --flag taking a raw string; validation
// and error wording live in the library so messages always name the key.
void add_experiment_flags(CLI::App* cmd, CommonArgs& args,
                          bool with_model_flag) {
  static const std::vector<std::pair<std::string, std::string>> kFlags = {
      {"model", "Model kind: rbf, frbf, or strbf"},
      {"neurons", "Hidden neuron count S (must match the centers rule)"},
      {"input_dim", "Tapped-delay input window length D"},
      {"time_taps", "Temporal lags T (strbf only; rbf/frbf force 1)"},
      {"kernel", "gaussian, multiquadric, or inverse_multiquadric"},
      {"sigma", "Gaussian kernel spread"},
      {"zeta", "Inverse-multiquadric offset"},
      {"centers", "range:<lo>:<hi>:<step> or list:v0,v1,..."},
      {"eta", "Step size (0 freezes learning)"},
      {"eta_v", "Fractional-term step size (frbf)"},
      {"alpha", "Convex mix of conventional vs fractional term (frbf)"},
      {"nu", "Fractional order in (0,1) (frbf)"},
      {"epochs", "Passes over the training signal"},
      {"trials", "Monte Carlo trial count"},
      {"seed", "Base seed; trial k uses a derived stream"},
      {"init_scale", "Stddev of the random initial weights"},
      {"q1", "Plant coefficient q1"},
      {"q2", "Plant coefficient q2"},
      {"q3", "Plant coefficient q3"},
      {"q4", "Plant coefficient q4"},
      {"q5", "Plant coefficient q5"},
      {"noise_variance", "Measurement noise variance"},
      {"train_length", "Training signal length"},
      {"train_half_period", "Training square-wave half period"},
      {"train_amplitude", "Training signal amplitude"},
      {"test_length", "Test signal length"},
      {"test_half_period", "Test square-wave half period"},
      {"test_amplitude", "Test signal amplitude"},
      {"test_target", "Score against clean or noisy targets"},
  };
  for (const auto& [key, help] : kFlags) {
    if (key == "model" && !with_model_flag) continue;
    auto storage = std::make_shared<std::string>();
    args.overrides.emplace_back(key, storage);
    cmd->add_option("--" + key, *storage, help);
  }
}

void add_common_flags(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path,
                  "Flat key = value configuration file");
  cmd->add_option("--out", args.out_dir, "Output directory for CSV files");
  cmd->add_option("--threads", args.threads,
                  "Worker threads (0 = auto); results are identical "
                  "regardless");
}

int report(const char* what, strbf_status status, int exit_code) {
  std::fprintf(stderr, "error: %s: %s (%s)\n", what, strbf_last_error(),
               strbf_status_name(status));
  return exit_code;
}

int status_exit(strbf_status status) {
  switch (status) {
    case STRBF_ERR_INVALID_ARGUMENT:
    case STRBF_ERR_PARSE:
      return kExitUsage;
    default:
      return kExitRuntime;
  }
}

// Builds a config from defaults + optional file + flag overrides. `model`
// overrides any model named by flags/file (used by `compare`).
int build_config(const CommonArgs& args, const char* model, ConfigPtr& out) {
  ConfigPtr config(strbf_config_create(nullptr));
  if (!config) {
    std::fprintf(stderr, "error: %s\n", strbf_last_error());
    return kExitUsage;
  }
  if (!args.config_path.empty()) {
    const strbf_status st =
        strbf_config_load_file(config.get(), args.config_path.c_str());
    if (st != STRBF_OK) return report("loading config", st, kExitUsage);
  }
  for (const auto& [key, value] : args.overrides) {
    if (value->empty()) continue;
    const strbf_status st =
        strbf_config_set(config.get(), key.c_str(), value->c_str());
    if (st != STRBF_OK) return report("applying flags", st, kExitUsage);
  }
  if (model != nullptr) {
    const strbf_status st = strbf_config_set(config.get(), "model", model);
    if (st != STRBF_OK) return report("applying flags", st, kExitUsage);
  }
  out = std::move(config);
  return kExitOk;
}

int ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    std::fprintf(stderr, "error: cannot create output directory %s: %s\n",
                 dir.c_str(), ec.message().c_str());
    return kExitRuntime;
  }
  return kExitOk;
}

int run_one_model(const CommonArgs& args, const char* model,
                  ResultPtr& result, std::string& resolved_model) {
  ConfigPtr config;
  if (int rc = build_config(args, model, config); rc != kExitOk) return rc;

  // The resolved model name decides output file names.
  const char* name = strbf_config_model(config.get());
  if (name == nullptr)
    return report("resolving config", STRBF_ERR_INVALID_ARGUMENT, kExitUsage);
  resolved_model = name;

  strbf_result* raw = nullptr;
  const strbf_status st = strbf_run(config.get(), args.threads, &raw);
  if (st != STRBF_OK) return report("running experiment", st, status_exit(st));
  result.reset(raw);
  return kExitOk;
}

int write_model_csvs(const ResultPtr& result, const std::string& model,
                     const std::string& out_dir) {
  const std::filesystem::path dir(out_dir);
  const std::string train = (dir / (model + "_train.csv")).string();
  const std::string test = (dir / (model + "_test.csv")).string();
  const strbf_status st =
      strbf_result_write_csv(result.get(), train.c_str(), test.c_str());
  if (st != STRBF_OK) return report("writing CSVs", st, kExitRuntime);
  return kExitOk;
}

int write_summary(const std::vector<std::string>& names,
                  const std::vector<const strbf_result*>& results,
                  const std::string& out_dir) {
  std::vector<const char*> cnames;
  for (const std::string& n : names) cnames.push_back(n.c_str());
  const std::string path =
      (std::filesystem::path(out_dir) / "summary.csv").string();
  const strbf_status st = strbf_write_summary_csv(
      cnames.data(), results.data(), results.size(), path.c_str());
  if (st != STRBF_OK) return report("writing summary", st, kExitRuntime);
  return kExitOk;
}

void print_summary_header() {
  std::printf("%-8s %16s %14s %8s %9s\n", "model", "final_train_db",
              "mean_test_db", "trials", "diverged");
}

void print_summary_row(const std::string& model, const ResultPtr& result) {
  std::printf("%-8s %16.4f %14.4f %8llu %9llu\n", model.c_str(),
              strbf_result_final_train_mse_db(result.get()),
              strbf_result_mean_test_mse_db(result.get()),
              static_cast<unsigned long long>(
                  strbf_result_trials_used(result.get())),
              static_cast<unsigned long long>(
                  strbf_result_diverged_count(result.get())));
}

int cmd_run(const CommonArgs& args) {
  if (int rc = ensure_out_dir(args.out_dir); rc != kExitOk) return rc;
  ResultPtr result;
  std::string model;
  if (int rc = run_one_model(args, nullptr, result, model); rc != kExitOk)
    return rc;
  if (int rc = write_model_csvs(result, model, args.out_dir); rc != kExitOk)
    return rc;
  if (int rc = write_summary({model}, {result.get()}, args.out_dir);
      rc != kExitOk)
    return rc;
  print_summary_header();
  print_summary_row(model, result);
  return kExitOk;
}

int cmd_compare(const CommonArgs& args) {
  if (int rc = ensure_out_dir(args.out_dir); rc != kExitOk) return rc;
  const std::vector<std::string> models = {"rbf", "frbf", "strbf"};
  std::vector<ResultPtr> results;
  for (const std::string& model : models) {
    ResultPtr result;
    std::string name;
    if (int rc = run_one_model(args, model.c_str(), result, name);
        rc != kExitOk)
      return rc;
    if (int rc = write_model_csvs(result, model, args.out_dir); rc != kExitOk)
      return rc;
    results.push_back(std::move(result));
  }
  std::vector<const strbf_result*> raw;
  for (const ResultPtr& r : results) raw.push_back(r.get());
  if (int rc = write_summary(models, raw, args.out_dir); rc != kExitOk)
    return rc;
  print_summary_header();
  for (std::size_t i = 0; i < models.size(); ++i)
    print_summary_row(models[i], results[i]);
  return kExitOk;
}

int cmd_signals(const CommonArgs& args) {
  if (int rc = ensure_out_dir(args.out_dir); rc != kExitOk) return rc;
  ConfigPtr config;
  if (int rc = build_config(args, nullptr, config); rc != kExitOk) return rc;
  const strbf_status st =
      strbf_signals_write_csv(config.get(), args.out_dir.c_str());
  if (st != STRBF_OK) return report("writing signals", st, kExitRuntime);
  std::printf("wrote train_input.csv train_target.csv test_input.csv "
              "test_target.csv under %s\n",
              args.out_dir.c_str());
  return kExitOk;
}

struct GradcheckArgs {
  std::uint64_t seed = 1;
  unsigned rounds = 100;
  double tolerance = 1e-6;
  bool inject_fault = false;
};

int cmd_gradcheck(const GradcheckArgs& args) {
  double max_dev = 0.0;
  const strbf_status st =
      strbf_gradcheck(args.seed, args.rounds, args.tolerance,
                      args.inject_fault ? 1 : 0, &max_dev);
  std::printf("gradcheck rounds=%u max_rel_deviation=%.3e tolerance=%.0e "
              "%s\n",
              args.rounds, max_dev, args.tolerance,
              st == STRBF_OK ? "PASS" : "FAIL");
  return st == STRBF_OK ? kExitOk : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online RBF / fractional RBF / spatio-temporal RBF "
               "system-identification benchmark"};
  app.require_subcommand(1);

  CommonArgs run_args;
  CLI::App* run = app.add_subcommand(
      "run", "Train and test one model, writing CSV curves and a summary");
  add_common_flags(run, run_args);
  add_experiment_flags(run, run_args, /*with_model_flag=*/true);

  CommonArgs compare_args;
  CLI::App* compare = app.add_subcommand(
      "compare",
      "Run rbf, frbf, and strbf under a shared seed and compare");
  add_common_flags(compare, compare_args);
  add_experiment_flags(compare, compare_args, /*with_model_flag=*/false);

  CommonArgs signal_args;
  CLI::App* signals = app.add_subcommand(
      "signals", "Dump train/test inputs and clean plant responses as CSV");
  add_common_flags(signals, signal_args);
  add_experiment_flags(signals, signal_args, /*with_model_flag=*/true);

  GradcheckArgs grad_args;
  CLI::App* gradcheck = app.add_subcommand(
      "gradcheck", "Finite-difference audit of every training rule");
  gradcheck->add_option("--seed", grad_args.seed, "Audit seed");
  gradcheck->add_option("--rounds", grad_args.rounds,
                        "Randomized configurations to draw");
  gradcheck->add_option("--tol", grad_args.tolerance,
                        "Relative tolerance (absolute floor 1e-9)");
  gradcheck
      ->add_flag("--inject-fault", grad_args.inject_fault,
                 "Negative control: flip one analytic gradient component")
      ->group("");  // hidden from --help; testing hook only

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints the message or help text
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (run->parsed()) return cmd_run(run_args);
  if (compare->parsed()) return cmd_compare(compare_args);
  if (signals->parsed()) return cmd_signals(signal_args);
  if (gradcheck->parsed()) return cmd_gradcheck(grad_args);
  return kExitUsage;
}
