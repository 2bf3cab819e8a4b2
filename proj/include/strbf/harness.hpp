#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "strbf/learning.hpp"
#include "strbf/model.hpp"
#include "strbf/plant.hpp"

namespace strbf {

enum class ModelKind { rbf, frbf, strbf };
enum class TestTarget { clean, noisy };

const char* model_kind_name(ModelKind kind);

/// Full description of one experiment. Defaults (via default_config) follow
/// the benchmark regime: S=6, D=3, gaussian sigma=1, centers -5..5 step 2,
/// noise variance 0.1, train 1000/250, test 200/100, 1000 trials;
/// eta 2e-5 for rbf/frbf and 1e-2 for strbf (T=5).
struct ExperimentConfig {
  ModelKind model = ModelKind::rbf;
  Architecture arch;       // time_taps is forced to 1 unless model == strbf
  double eta = 2e-5;
  FrbfConfig frbf;         // consulted only when model == frbf
  std::size_t epochs = 1;  // passes over the training signal
  std::size_t trials = 1000;
  std::uint64_t base_seed = 1;
  double init_scale = 0.1;
  PlantCoeffs plant;
  NoiseSpec noise;
  SignalSpec train_signal{1000, 250, 1.0};
  SignalSpec test_signal{200, 100, 1.0};
  TestTarget test_target = TestTarget::clean;

  void validate() const;
};

ExperimentConfig default_config(ModelKind kind);

/// Per-iteration squared errors for one seeded train/test round. On
/// divergence the curves are truncated at the failing iteration and the
/// trial is excluded from aggregation.
struct TrialResult {
  std::vector<double> train_sq_err;  // epochs * train length entries
  std::vector<double> test_sq_err;   // test length entries, weights frozen
  bool diverged = false;
  std::size_t diverged_at = std::numeric_limits<std::size_t>::max();
};

/// Monte Carlo average over non-diverged trials. Curves are averaged in the
/// linear (squared-error) domain and only then converted to dB; the audit
/// flag records that ordering for tests. final_train_mse_db summarizes the
/// last 10% of the averaged training curve; mean_test_mse_db the whole
/// averaged test curve.
struct AggregateResult {
  std::vector<double> mean_train_sq;
  std::vector<double> mean_test_sq;
  std::vector<double> mean_train_db;
  std::vector<double> mean_test_db;
  double final_train_mse_db = 0.0;
  double mean_test_mse_db = 0.0;
  std::size_t trials_used = 0;
  std::size_t diverged_count = 0;
  bool db_after_linear_average = false;
};

class aggregation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Training stream for one trial: the train signal tiled `epochs` times and
/// streamed through the plant in one continuous pass, so plant history,
/// input windows, and any activation buffer carry across epoch boundaries
/// and the noise is freshly drawn for every sample.
struct TrainingStream {
  std::vector<double> input;
  std::vector<double> target;
};
TrainingStream make_training_stream(const ExperimentConfig& cfg, Rng& rng);

/// Test data with a clean or noisy target per cfg.test_target.
TrainingStream make_test_data(const ExperimentConfig& cfg, Rng& rng);

/// One seeded round: init from derive_seed(base_seed, trial_index), online
/// training over the stream, then frozen-weight scoring of the test signal
/// (temporal buffer reset at the test boundary).
TrialResult run_trial(const ExperimentConfig& cfg, std::uint64_t trial_index);

/// Deterministic reduction: pointwise compensated mean across non-diverged
/// trials in index order, independent of how the trials were produced.
/// Throws aggregation_error if every trial diverged.
AggregateResult aggregate_trials(const std::vector<TrialResult>& trials);

/// Runs all trials (in parallel when threads != 1; 0 picks a thread count)
/// and aggregates. Output is identical for every thread count.
AggregateResult run_monte_carlo(const ExperimentConfig& cfg,
                                unsigned threads = 0);

/// 10 * log10(m); throws std::invalid_argument unless m is positive and
/// finite.
double mse_db(double m);

/// Curve-conversion variant: exact zeros map to -infinity instead of
/// throwing, so an underflowed squared error cannot abort a run.
double mse_db_or_neg_inf(double m);

}  // namespace strbf
