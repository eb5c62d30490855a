/* Copyright 2026 The rrls Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C API of the rrls robust reinforcement learning toolkit.
 *
 * Conventions:
 *   - Every handle type is opaque; create/destroy in pairs. Destroy
 *     functions accept NULL.
 *   - Functions return RRLS_OK (0) on success and a nonzero rrls_status
 *     otherwise; rrls_last_error() describes the most recent failure on
 *     the calling thread.
 *   - String outputs fill a caller buffer and report the required size
 *     (including the NUL byte) through *required; they fail with
 *     RRLS_ERROR_BUFFER when the buffer is too small.
 */

#ifndef RRLS_RRLS_H_
#define RRLS_RRLS_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RRLS_API __declspec(dllexport)
#else
#define RRLS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rrls_status {
    RRLS_OK = 0,
    RRLS_ERROR_INVALID_ARGUMENT = 1, /* contract violation */
    RRLS_ERROR_CONFIG = 2,           /* bad config / unknown id or algorithm */
    RRLS_ERROR_IO = 3,               /* file read/write failure */
    RRLS_ERROR_BUDGET = 4,           /* iteration budget exhausted */
    RRLS_ERROR_FAULT = 5,            /* runtime fault */
    RRLS_ERROR_BUFFER = 6            /* output buffer too small */
} rrls_status;

/* Message of the calling thread's most recent failure; empty string when
 * none. The pointer stays valid until the next failing call on the same
 * thread. */
RRLS_API const char* rrls_last_error(void);

RRLS_API void rrls_version(int* major, int* minor, int* patch);

/* ---- environments ----------------------------------------------------- */

typedef struct rrls_env rrls_env;

/* Number of registered environment ids. */
RRLS_API size_t rrls_env_count(void);
RRLS_API rrls_status rrls_env_id(size_t index, char* buf, size_t cap, size_t* required);

/* Human-readable registry listing (ids, dims, bounds, bundled spaces). */
RRLS_API rrls_status rrls_list_envs(char* buf, size_t cap, size_t* required);

RRLS_API rrls_status rrls_env_create(const char* id, rrls_env** out);
RRLS_API void rrls_env_destroy(rrls_env* env);

RRLS_API rrls_status rrls_env_observation_dim(const rrls_env* env, int* out);
RRLS_API rrls_status rrls_env_action_dim(const rrls_env* env, int* out);
RRLS_API rrls_status rrls_env_param_dim(const rrls_env* env, int* out);
/* Per-dimension action box; both arrays hold action_dim entries. */
RRLS_API rrls_status rrls_env_action_bounds(const rrls_env* env, double* low, double* high);

/* observation must hold observation_dim entries. */
RRLS_API rrls_status rrls_env_reset(rrls_env* env, uint64_t seed, double* observation);
RRLS_API rrls_status rrls_env_step(rrls_env* env, const double* action, size_t action_len,
                                   double* observation, double* reward, int* terminated,
                                   int* truncated);

RRLS_API rrls_status rrls_env_set_params(rrls_env* env, const double* params, size_t len);
RRLS_API rrls_status rrls_env_get_params(const rrls_env* env, double* params, size_t len);

/* ---- parameter spaces and wrappers ------------------------------------ */

typedef struct rrls_space rrls_space;

/* Bundled uncertainty space of a registered environment. */
RRLS_API rrls_status rrls_space_builtin(const char* env_id, rrls_space** out);
RRLS_API rrls_status rrls_space_from_json(const char* json_text, rrls_space** out);
RRLS_API rrls_status rrls_space_to_json(const rrls_space* space, char* buf, size_t cap,
                                        size_t* required);
RRLS_API void rrls_space_destroy(rrls_space* space);

RRLS_API rrls_status rrls_space_dim_count(const rrls_space* space, size_t* out);
RRLS_API rrls_status rrls_space_dim(const rrls_space* space, size_t index, char* name_buf,
                                    size_t name_cap, double* low, double* high,
                                    double* reference);

/* Elementwise low + u*(high-low) for u in [0,1]^d. */
RRLS_API rrls_status rrls_space_denormalize(const rrls_space* space, const double* u,
                                            size_t len, double* params);

/* Each wrapper takes ownership of *env and clears it on success; destroy
 * only the returned handle. */
RRLS_API rrls_status rrls_env_wrap_domain_randomization(rrls_env** env,
                                                        const rrls_space* space,
                                                        uint64_t seed, rrls_env** out);
RRLS_API rrls_status rrls_env_wrap_adversarial(rrls_env** env, const rrls_space* space,
                                               rrls_env** out);
RRLS_API rrls_status rrls_env_wrap_action_robust(rrls_env** env, double alpha,
                                                 rrls_env** out);

/* ---- tabular MDPs and robust solvers ----------------------------------- */

typedef struct rrls_mdp rrls_mdp;
typedef struct rrls_kernel_set rrls_kernel_set;

RRLS_API rrls_status rrls_mdp_from_json(const char* json_text, rrls_mdp** out);
RRLS_API rrls_status rrls_mdp_to_json(const rrls_mdp* mdp, char* buf, size_t cap,
                                      size_t* required);
RRLS_API void rrls_mdp_destroy(rrls_mdp* mdp);
RRLS_API rrls_status rrls_mdp_shape(const rrls_mdp* mdp, int* n_states, int* n_actions);

/* values: n_states entries; greedy: n_states action indices; iterations
 * optional. */
RRLS_API rrls_status rrls_mdp_value_iteration(const rrls_mdp* mdp, double tol, int max_iters,
                                              double* values, int* greedy, int* iterations);

RRLS_API rrls_status rrls_kernel_set_from_json(const char* json_text, rrls_kernel_set** out);
RRLS_API void rrls_kernel_set_destroy(rrls_kernel_set* ks);
RRLS_API rrls_status rrls_kernel_set_shape(const rrls_kernel_set* ks, int* n_states,
                                           int* n_actions, int* n_kernels);

RRLS_API rrls_status rrls_robust_value_iteration(const rrls_kernel_set* ks, double tol,
                                                 int max_iters, double* values, int* greedy,
                                                 int* iterations);

/* Static-vs-dynamic policy gap diagnostic (>= -tol; 0 within tolerance
 * for rectangular sets). */
RRLS_API rrls_status rrls_static_dynamic_gap(const rrls_kernel_set* ks, double tol,
                                             long long enumeration_cap, double* gap);

/* ---- trained policies --------------------------------------------------- */

typedef struct rrls_policy rrls_policy;

RRLS_API rrls_status rrls_policy_load(const char* path, rrls_policy** out);
RRLS_API void rrls_policy_destroy(rrls_policy* policy);
RRLS_API rrls_status rrls_policy_env_id(const rrls_policy* policy, char* buf, size_t cap,
                                        size_t* required);
/* Evaluates the policy for an observation of the policy's environment. */
RRLS_API rrls_status rrls_policy_act(const rrls_policy* policy, const double* observation,
                                     size_t obs_len, double* action, size_t action_len);

/* ---- batch commands (the CLI surface) ----------------------------------- */

/* Trains per the JSON experiment config; artifacts land in the config's
 * output_dir unless output_dir overrides it. workers <= 0 defers to
 * RRLS_WORKERS, then 1. */
RRLS_API rrls_status rrls_cmd_train(const char* config_path, const char* output_dir,
                                    int workers);

/* Evaluates a saved policy over the config's evaluation mesh, writing
 * the episode CSV and summary JSON. base/target summaries (both or
 * neither) add normalized scores. */
RRLS_API rrls_status rrls_cmd_evaluate(const char* policy_path, const char* config_path,
                                       const char* out_csv, const char* out_json,
                                       const char* base_summary, const char* target_summary,
                                       int workers);

/* Renders training-curve SVGs and a markdown score table for a run
 * directory. out_dir empty -> <run_dir>/report. */
RRLS_API rrls_status rrls_cmd_report(const char* run_dir, const char* out_dir);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RRLS_RRLS_H_ */
