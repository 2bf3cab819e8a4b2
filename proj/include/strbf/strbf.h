/* C interface to the spatio-temporal RBF benchmark library.
 *
 * All functions returning strbf_status set a thread-local message
 * retrievable with strbf_last_error() on failure. Handles are opaque; every
 * *_create has a matching *_destroy and NULL is always safe to destroy.
 */
#ifndef STRBF_H
#define STRBF_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum strbf_status {
  STRBF_OK = 0,
  STRBF_ERR_INVALID_ARGUMENT = 1, /* bad key, value, or handle state */
  STRBF_ERR_PARSE = 2,            /* config file could not be parsed */
  STRBF_ERR_IO = 3,               /* file could not be read or written */
  STRBF_ERR_DIVERGED = 4,         /* every Monte Carlo trial diverged */
  STRBF_ERR_INTERNAL = 5
} strbf_status;

typedef struct strbf_config strbf_config;
typedef struct strbf_result strbf_result;

const char* strbf_status_name(strbf_status status);

/* Message from the most recent failing call on this thread ("" if none). */
const char* strbf_last_error(void);

/* Configuration ----------------------------------------------------------
 *
 * A config starts from the built-in experiment defaults for `model`
 * ("rbf", "frbf", or "strbf"; NULL leaves the model to a later setting and
 * defaults to rbf). Settings layer in call order: load_file first, then
 * individual strbf_config_set calls override it. Keys and value syntax are
 * the `key = value` names documented in the README; unknown keys are
 * rejected with the offending key named in strbf_last_error().
 */
strbf_config* strbf_config_create(const char* model);
void strbf_config_destroy(strbf_config* config);
strbf_status strbf_config_set(strbf_config* config, const char* key,
                              const char* value);
strbf_status strbf_config_load_file(strbf_config* config, const char* path);

/* Resolves the layered settings and returns the effective model name
 * ("rbf", "frbf", or "strbf"), or NULL on an invalid configuration (see
 * strbf_last_error). The pointer stays valid for the process lifetime. */
const char* strbf_config_model(const strbf_config* config);

/* Experiment -------------------------------------------------------------
 *
 * Runs the configured Monte Carlo experiment. threads = 0 picks a worker
 * count automatically; results are identical for every thread count.
 */
strbf_status strbf_run(const strbf_config* config, unsigned threads,
                       strbf_result** out);

void strbf_result_destroy(strbf_result* result);
double strbf_result_final_train_mse_db(const strbf_result* result);
double strbf_result_mean_test_mse_db(const strbf_result* result);
uint64_t strbf_result_trials_used(const strbf_result* result);
uint64_t strbf_result_diverged_count(const strbf_result* result);

/* Curve access: phase 0 = train, 1 = test; domain 0 = mean squared error,
 * 1 = dB. strbf_result_curve copies min(capacity, length) values. */
size_t strbf_result_curve_len(const strbf_result* result, int phase);
strbf_status strbf_result_curve(const strbf_result* result, int phase,
                                int domain, double* out, size_t capacity);

/* CSV emission (column layout documented in the README). */
strbf_status strbf_result_write_csv(const strbf_result* result,
                                    const char* train_path,
                                    const char* test_path);
strbf_status strbf_write_summary_csv(const char* const* names,
                                     const strbf_result* const* results,
                                     size_t count, const char* path);

/* Writes train_input.csv, train_target.csv, test_input.csv, test_target.csv
 * (inputs and clean plant responses) under out_dir. */
strbf_status strbf_signals_write_csv(const strbf_config* config,
                                     const char* out_dir);

/* Finite-difference gradient audit across `rounds` randomized small
 * networks. Fills *max_rel_deviation (may be NULL) and returns STRBF_OK only
 * if every parameter matched within `tolerance` (relative, 1e-9 absolute
 * floor). inject_fault != 0 flips one analytic component as a negative
 * control and must fail. */
strbf_status strbf_gradcheck(uint64_t seed, uint32_t rounds, double tolerance,
                             int inject_fault, double* max_rel_deviation);

#ifdef __cplusplus
}
#endif

#endif /* STRBF_H */
