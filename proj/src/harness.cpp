#include "strbf/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <thread>

#include "internal_util.hpp"

namespace strbf {

const char* model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::rbf: return "rbf";
    case ModelKind::frbf: return "frbf";
    case ModelKind::strbf: return "strbf";
  }
  return "?";
}

ExperimentConfig default_config(ModelKind kind) {
  ExperimentConfig cfg;
  cfg.model = kind;
  cfg.arch.neuron_count = 6;
  cfg.arch.input_dim = 3;
  cfg.arch.time_taps = kind == ModelKind::strbf ? 5 : 1;
  cfg.arch.kernel = KernelSpec{KernelVariant::gaussian, 1.0, 1.0};
  cfg.arch.centers = CenterRule{};  // -5..5 step 2
  cfg.eta = kind == ModelKind::strbf ? 1e-2 : 2e-5;
  cfg.frbf = make_frbf_config(2e-5, 2e-5, 0.5, 0.9);
  return cfg;
}

void ExperimentConfig::validate() const {
  arch.validate();
  if (model != ModelKind::strbf && arch.time_taps != 1)
    throw std::invalid_argument("time_taps must be 1 unless model is strbf");
  // eta == 0 freezes learning (useful as a baseline); the per-step
  // configs themselves require a positive step, so run_trial skips the
  // update calls entirely in that case.
  if (!(eta >= 0.0) || !std::isfinite(eta))
    throw std::invalid_argument("eta must be >= 0 and finite");
  if (model == ModelKind::frbf) frbf.validate();
  if (epochs == 0) throw std::invalid_argument("epochs must be >= 1");
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  if (init_scale < 0.0 || !std::isfinite(init_scale))
    throw std::invalid_argument("init_scale must be >= 0");
  plant.validate();
  noise.validate();
  train_signal.validate();
  test_signal.validate();
}

TrainingStream make_training_stream(const ExperimentConfig& cfg, Rng& rng) {
  const std::vector<double> base = gen_square(cfg.train_signal);
  TrainingStream stream;
  stream.input.reserve(base.size() * cfg.epochs);
  for (std::size_t e = 0; e < cfg.epochs; ++e)
    stream.input.insert(stream.input.end(), base.begin(), base.end());
  stream.target = run_plant(cfg.plant, stream.input, cfg.noise, rng);
  return stream;
}

TrainingStream make_test_data(const ExperimentConfig& cfg, Rng& rng) {
  TrainingStream data;
  data.input = gen_square(cfg.test_signal);
  if (cfg.test_target == TestTarget::noisy) {
    data.target = run_plant(cfg.plant, data.input, cfg.noise, rng);
  } else {
    NoiseSpec none{0.0};
    data.target = run_plant(cfg.plant, data.input, none, rng);
  }
  return data;
}

TrialResult run_trial(const ExperimentConfig& cfg,
                      std::uint64_t trial_index) {
  cfg.validate();
  Rng rng(derive_seed(cfg.base_seed, trial_index));

  RbfState rbf;
  StRbfState strbf;
  const bool temporal = cfg.model == ModelKind::strbf;
  if (temporal)
    strbf = init_strbf_state(cfg.arch, rng, cfg.init_scale);
  else
    rbf = init_rbf_state(cfg.arch, rng, cfg.init_scale);

  const TrainingStream train = make_training_stream(cfg, rng);
  const GdConfig gd{cfg.eta > 0.0 ? cfg.eta : 1.0};  // unused when eta == 0
  const bool frozen = cfg.eta == 0.0;

  TrialResult result;
  result.train_sq_err.reserve(train.input.size());
  std::vector<double> window(cfg.arch.input_dim);

  for (std::size_t k = 0; k < train.input.size(); ++k) {
    fill_input_window(train.input, k, window);
    const double d = train.target[k];
    try {
      StepResult step;
      if (frozen) {
        const double y = temporal ? push_and_forward_strbf(strbf, window)
                                  : forward_rbf(rbf, window);
        step = instantaneous_cost(d, y);
      } else if (temporal) {
        step = gd_step_strbf(strbf, window, d, gd);
      } else if (cfg.model == ModelKind::frbf) {
        step = frbf_step(rbf, window, d, cfg.frbf);
      } else {
        step = gd_step_rbf(rbf, window, d, gd);
      }
      result.train_sq_err.push_back(step.e * step.e);
    } catch (const divergence_error&) {
      result.diverged = true;
      result.diverged_at = k;
      return result;
    }
  }

  // Frozen-weight test pass; the temporal buffer restarts from silence.
  const TrainingStream test = make_test_data(cfg, rng);
  if (temporal) strbf.reset_buffer();
  result.test_sq_err.reserve(test.input.size());
  for (std::size_t k = 0; k < test.input.size(); ++k) {
    fill_input_window(test.input, k, window);
    const double y = temporal ? push_and_forward_strbf(strbf, window)
                              : forward_rbf(rbf, window);
    const double e = test.target[k] - y;
    result.test_sq_err.push_back(e * e);
  }
  return result;
}

namespace {

std::vector<double> pointwise_mean(const std::vector<const TrialResult*>& used,
                                   std::vector<double> TrialResult::*curve) {
  const std::size_t len = ((*used.front()).*curve).size();
  std::vector<double> mean(len);
  for (std::size_t k = 0; k < len; ++k) {
    detail::NeumaierAcc acc;
    for (const TrialResult* trial : used) acc.add(((*trial).*curve)[k]);
    mean[k] = acc.value() / static_cast<double>(used.size());
  }
  return mean;
}

double window_mean(std::span<const double> values, std::size_t count) {
  detail::NeumaierAcc acc;
  for (std::size_t k = values.size() - count; k < values.size(); ++k)
    acc.add(values[k]);
  return acc.value() / static_cast<double>(count);
}

}  // namespace

AggregateResult aggregate_trials(const std::vector<TrialResult>& trials) {
  std::vector<const TrialResult*> used;
  used.reserve(trials.size());
  std::size_t diverged = 0;
  for (const TrialResult& t : trials) {
    if (t.diverged)
      ++diverged;
    else
      used.push_back(&t);
  }
  if (used.empty())
    throw aggregation_error("every trial diverged; nothing to aggregate");

  AggregateResult agg;
  agg.trials_used = used.size();
  agg.diverged_count = diverged;
  agg.mean_train_sq = pointwise_mean(used, &TrialResult::train_sq_err);
  agg.mean_test_sq = pointwise_mean(used, &TrialResult::test_sq_err);

  // Linear-domain averaging is complete; only now convert to dB.
  agg.db_after_linear_average = true;
  agg.mean_train_db.reserve(agg.mean_train_sq.size());
  for (double m : agg.mean_train_sq)
    agg.mean_train_db.push_back(mse_db_or_neg_inf(m));
  agg.mean_test_db.reserve(agg.mean_test_sq.size());
  for (double m : agg.mean_test_sq)
    agg.mean_test_db.push_back(mse_db_or_neg_inf(m));

  const std::size_t tail =
      std::max<std::size_t>(1, agg.mean_train_sq.size() / 10);
  agg.final_train_mse_db =
      mse_db_or_neg_inf(window_mean(agg.mean_train_sq, tail));
  agg.mean_test_mse_db = mse_db_or_neg_inf(
      window_mean(agg.mean_test_sq, agg.mean_test_sq.size()));
  return agg;
}

AggregateResult run_monte_carlo(const ExperimentConfig& cfg,
                                unsigned threads) {
  cfg.validate();
  if (threads == 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    threads = hw == 0 ? 1 : hw;
  }
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, cfg.trials));

  std::vector<TrialResult> results(cfg.trials);
  if (threads <= 1) {
    for (std::size_t i = 0; i < cfg.trials; ++i)
      results[i] = run_trial(cfg, i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        try {
          for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cfg.trials || failed.load()) break;
            results[i] = run_trial(cfg, i);
          }
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      });
    }
    for (std::thread& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }
  return aggregate_trials(results);
}

double mse_db(double m) {
  if (!(m > 0.0) || !std::isfinite(m))
    throw std::invalid_argument("mse_db requires a positive finite value");
  return 10.0 * std::log10(m);
}

double mse_db_or_neg_inf(double m) {
  if (m == 0.0) return -std::numeric_limits<double>::infinity();
  return mse_db(m);
}

}  // namespace strbf
