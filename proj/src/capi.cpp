#include "strbf/strbf.h"

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "strbf/config.hpp"
#include "strbf/csv.hpp"
#include "strbf/gradcheck.hpp"
#include "strbf/harness.hpp"

namespace {

thread_local std::string g_last_error;

strbf_status fail(strbf_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs `fn`, translating exceptions into status codes at the C boundary.
template <typename Fn>
strbf_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const strbf::aggregation_error& e) {
    return fail(STRBF_ERR_DIVERGED, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(STRBF_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::runtime_error& e) {
    return fail(STRBF_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(STRBF_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(STRBF_ERR_INTERNAL, "unknown error");
  }
}

}  // namespace

struct strbf_config {
  strbf::ConfigBuilder builder;
};

struct strbf_result {
  strbf::AggregateResult agg;
};

extern "C" {

const char* strbf_status_name(strbf_status status) {
  switch (status) {
    case STRBF_OK: return "ok";
    case STRBF_ERR_INVALID_ARGUMENT: return "invalid argument";
    case STRBF_ERR_PARSE: return "parse error";
    case STRBF_ERR_IO: return "io error";
    case STRBF_ERR_DIVERGED: return "all trials diverged";
    case STRBF_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* strbf_last_error(void) { return g_last_error.c_str(); }

strbf_config* strbf_config_create(const char* model) {
  try {
    auto* config = new strbf_config;
    if (model != nullptr) config->builder.set("model", model);
    return config;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return nullptr;
  }
}

void strbf_config_destroy(strbf_config* config) { delete config; }

strbf_status strbf_config_set(strbf_config* config, const char* key,
                              const char* value) {
  if (config == nullptr || key == nullptr || value == nullptr)
    return fail(STRBF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    config->builder.set(key, value);
    return STRBF_OK;
  });
}

strbf_status strbf_config_load_file(strbf_config* config, const char* path) {
  if (config == nullptr || path == nullptr)
    return fail(STRBF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    try {
      config->builder.load_file(path);
    } catch (const std::invalid_argument& e) {
      return fail(STRBF_ERR_PARSE, e.what());
    }
    return STRBF_OK;
  });
}

const char* strbf_config_model(const strbf_config* config) {
  if (config == nullptr) {
    g_last_error = "null argument";
    return nullptr;
  }
  try {
    return strbf::model_kind_name(config->builder.resolve().model);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return nullptr;
  }
}

strbf_status strbf_run(const strbf_config* config, unsigned threads,
                       strbf_result** out) {
  if (config == nullptr || out == nullptr)
    return fail(STRBF_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const strbf::ExperimentConfig cfg = config->builder.resolve();
    auto result = std::make_unique<strbf_result>();
    result->agg = strbf::run_monte_carlo(cfg, threads);
    *out = result.release();
    return STRBF_OK;
  });
}

void strbf_result_destroy(strbf_result* result) { delete result; }

double strbf_result_final_train_mse_db(const strbf_result* result) {
  return result == nullptr ? std::numeric_limits<double>::quiet_NaN()
                           : result->agg.final_train_mse_db;
}

double strbf_result_mean_test_mse_db(const strbf_result* result) {
  return result == nullptr ? std::numeric_limits<double>::quiet_NaN()
                           : result->agg.mean_test_mse_db;
}

uint64_t strbf_result_trials_used(const strbf_result* result) {
  return result == nullptr ? 0 : result->agg.trials_used;
}

uint64_t strbf_result_diverged_count(const strbf_result* result) {
  return result == nullptr ? 0 : result->agg.diverged_count;
}

namespace {

const std::vector<double>* select_curve(const strbf_result* result, int phase,
                                        int domain) {
  if (result == nullptr) return nullptr;
  if (phase == 0)
    return domain == 0 ? &result->agg.mean_train_sq
                       : &result->agg.mean_train_db;
  if (phase == 1)
    return domain == 0 ? &result->agg.mean_test_sq
                       : &result->agg.mean_test_db;
  return nullptr;
}

}  // namespace

size_t strbf_result_curve_len(const strbf_result* result, int phase) {
  const auto* curve = select_curve(result, phase, 0);
  return curve == nullptr ? 0 : curve->size();
}

strbf_status strbf_result_curve(const strbf_result* result, int phase,
                                int domain, double* out, size_t capacity) {
  const auto* curve = select_curve(result, phase, domain);
  if (curve == nullptr || out == nullptr)
    return fail(STRBF_ERR_INVALID_ARGUMENT, "bad curve selector");
  const size_t n = std::min(capacity, curve->size());
  std::memcpy(out, curve->data(), n * sizeof(double));
  return STRBF_OK;
}

strbf_status strbf_result_write_csv(const strbf_result* result,
                                    const char* train_path,
                                    const char* test_path) {
  if (result == nullptr || train_path == nullptr || test_path == nullptr)
    return fail(STRBF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    strbf::write_curve_csv(result->agg.mean_train_sq, train_path);
    strbf::write_curve_csv(result->agg.mean_test_sq, test_path);
    return STRBF_OK;
  });
}

strbf_status strbf_write_summary_csv(const char* const* names,
                                     const strbf_result* const* results,
                                     size_t count, const char* path) {
  if (names == nullptr || results == nullptr || path == nullptr)
    return fail(STRBF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<strbf::SummaryRow> rows;
    rows.reserve(count);
    for (size_t i = 0; i < count; ++i)
      rows.push_back(strbf::summary_row(names[i], results[i]->agg));
    strbf::write_summary_csv(rows, path);
    return STRBF_OK;
  });
}

strbf_status strbf_signals_write_csv(const strbf_config* config,
                                     const char* out_dir) {
  if (config == nullptr || out_dir == nullptr)
    return fail(STRBF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const strbf::ExperimentConfig cfg = config->builder.resolve();
    const std::filesystem::path dir(out_dir);
    strbf::Rng rng(strbf::derive_seed(cfg.base_seed, 0));
    strbf::NoiseSpec none{0.0};
    const auto train = strbf::gen_square(cfg.train_signal);
    const auto test = strbf::gen_square(cfg.test_signal);
    strbf::write_value_csv(train, dir / "train_input.csv", "input");
    strbf::write_value_csv(strbf::run_plant(cfg.plant, train, none, rng),
                           dir / "train_target.csv", "target_clean");
    strbf::write_value_csv(test, dir / "test_input.csv", "input");
    strbf::write_value_csv(strbf::run_plant(cfg.plant, test, none, rng),
                           dir / "test_target.csv", "target_clean");
    return STRBF_OK;
  });
}

strbf_status strbf_gradcheck(uint64_t seed, uint32_t rounds, double tolerance,
                             int inject_fault, double* max_rel_deviation) {
  return guarded([&] {
    strbf::GradCheckConfig cfg;
    cfg.seed = seed;
    cfg.rounds = rounds;
    cfg.tolerance = tolerance;
    cfg.inject_sign_fault = inject_fault != 0;
    const strbf::GradCheckReport report = strbf::run_gradcheck(cfg);
    if (max_rel_deviation != nullptr)
      *max_rel_deviation = report.max_rel_deviation;
    if (!report.pass)
      return fail(STRBF_ERR_INVALID_ARGUMENT,
                  "gradient check failed: max relative deviation " +
                      std::to_string(report.max_rel_deviation));
    return STRBF_OK;
  });
}

}  // extern "C"
