// Copyright 2026 The rrls Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rrls/rrls.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "nlohmann/json.hpp"

#include "core/env.hpp"
#include "core/errors.hpp"
#include "core/experiment.hpp"
#include "core/mdp.hpp"
#include "core/parallel.hpp"
#include "core/policy_artifact.hpp"
#include "core/registry.hpp"
#include "core/robust.hpp"
#include "core/wrappers.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

/// Maps core exceptions onto status codes around any API body.
template <typename Fn>
rrls_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const rrls::ConfigError& e) {
        set_error(e.what());
        return RRLS_ERROR_CONFIG;
    } catch (const rrls::BudgetExhausted& e) {
        set_error(e.what());
        return RRLS_ERROR_BUDGET;
    } catch (const rrls::IoError& e) {
        set_error(e.what());
        return RRLS_ERROR_IO;
    } catch (const rrls::EnvFault& e) {
        set_error(e.what());
        return RRLS_ERROR_FAULT;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return RRLS_ERROR_INVALID_ARGUMENT;
    } catch (const std::logic_error& e) {
        set_error(e.what());
        return RRLS_ERROR_INVALID_ARGUMENT;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return RRLS_ERROR_FAULT;
    } catch (const std::exception& e) {
        set_error(e.what());
        return RRLS_ERROR_FAULT;
    }
}

rrls_status fill_buffer(const std::string& text, char* buf, size_t cap, size_t* required) {
    if (required) *required = text.size() + 1;
    if (!buf || cap < text.size() + 1) {
        set_error("output buffer too small (" + std::to_string(text.size() + 1) +
                  " bytes required)");
        return RRLS_ERROR_BUFFER;
    }
    std::memcpy(buf, text.c_str(), text.size() + 1);
    return RRLS_OK;
}

rrls_status require(bool ok, const char* message) {
    if (ok) return RRLS_OK;
    set_error(message);
    return RRLS_ERROR_INVALID_ARGUMENT;
}

} // namespace

struct rrls_env {
    std::unique_ptr<rrls::Env> env;
};

struct rrls_space {
    rrls::ParamSpace space;
};

struct rrls_mdp {
    rrls::FiniteMDP mdp;
};

struct rrls_kernel_set {
    rrls::KernelSet ks;
};

struct rrls_policy {
    rrls::PolicyArtifact artifact;
    rrls::PolicyFn fn;
    int obs_dim = 0;
    int act_dim = 0;
};

namespace {

/// Ownership transfer shared by the wrapper constructors: consumes *env
/// on success and hands back the wrapped handle.
template <typename WrapFn>
rrls_status wrap_common(rrls_env** env, rrls_env** out, WrapFn&& wrap) {
    if (rrls_status s = require(env && *env && out, "null argument"); s != RRLS_OK) return s;
    auto handle = std::make_unique<rrls_env>();
    handle->env = wrap(std::move((*env)->env));
    delete *env;
    *env = nullptr;
    *out = handle.release();
    return RRLS_OK;
}

} // namespace

extern "C" {

const char* rrls_last_error(void) { return g_last_error.c_str(); }

void rrls_version(int* major, int* minor, int* patch) {
    if (major) *major = 0;
    if (minor) *minor = 1;
    if (patch) *patch = 0;
}

/* ---- environments ----------------------------------------------------- */

size_t rrls_env_count(void) { return rrls::env_registry().size(); }

rrls_status rrls_env_id(size_t index, char* buf, size_t cap, size_t* required) {
    return guarded([&]() -> rrls_status {
        const auto& registry = rrls::env_registry();
        if (rrls_status s = require(index < registry.size(), "environment index out of range");
            s != RRLS_OK)
            return s;
        return fill_buffer(registry[index].id, buf, cap, required);
    });
}

rrls_status rrls_list_envs(char* buf, size_t cap, size_t* required) {
    return guarded(
        [&]() -> rrls_status { return fill_buffer(rrls::list_envs_text(), buf, cap, required); });
}

rrls_status rrls_env_create(const char* id, rrls_env** out) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(id && out, "null argument"); s != RRLS_OK) return s;
        auto handle = std::make_unique<rrls_env>();
        handle->env = rrls::make_env(id);
        *out = handle.release();
        return RRLS_OK;
    });
}

void rrls_env_destroy(rrls_env* env) { delete env; }

rrls_status rrls_env_observation_dim(const rrls_env* env, int* out) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(env && out, "null argument"); s != RRLS_OK) return s;
        *out = env->env->observation_dim();
        return RRLS_OK;
    });
}

rrls_status rrls_env_action_dim(const rrls_env* env, int* out) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(env && out, "null argument"); s != RRLS_OK) return s;
        *out = env->env->action_dim();
        return RRLS_OK;
    });
}

rrls_status rrls_env_param_dim(const rrls_env* env, int* out) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(env && out, "null argument"); s != RRLS_OK) return s;
        *out = env->env->param_dim();
        return RRLS_OK;
    });
}

rrls_status rrls_env_action_bounds(const rrls_env* env, double* low, double* high) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(env && low && high, "null argument"); s != RRLS_OK)
            return s;
        rrls::ActionBounds bounds = env->env->action_bounds();
        for (std::size_t i = 0; i < bounds.low.size(); ++i) {
            low[i] = bounds.low[i];
            high[i] = bounds.high[i];
        }
        return RRLS_OK;
    });
}

rrls_status rrls_env_reset(rrls_env* env, uint64_t seed, double* observation) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(env && observation, "null argument"); s != RRLS_OK)
            return s;
        std::vector<double> obs = env->env->reset(seed);
        std::memcpy(observation, obs.data(), obs.size() * sizeof(double));
        return RRLS_OK;
    });
}

rrls_status rrls_env_step(rrls_env* env, const double* action, size_t action_len,
                          double* observation, double* reward, int* terminated,
                          int* truncated) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(env && action && observation && reward && terminated &&
                                        truncated,
                                    "null argument");
            s != RRLS_OK)
            return s;
        rrls::StepResult result =
            env->env->step(std::span<const double>(action, action_len));
        std::memcpy(observation, result.observation.data(),
                    result.observation.size() * sizeof(double));
        *reward = result.reward;
        *terminated = result.terminated ? 1 : 0;
        *truncated = result.truncated ? 1 : 0;
        return RRLS_OK;
    });
}

rrls_status rrls_env_set_params(rrls_env* env, const double* params, size_t len) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(env && params, "null argument"); s != RRLS_OK) return s;
        env->env->set_params(std::span<const double>(params, len));
        return RRLS_OK;
    });
}

rrls_status rrls_env_get_params(const rrls_env* env, double* params, size_t len) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(env && params, "null argument"); s != RRLS_OK) return s;
        rrls::ParamVector current = env->env->get_params();
        if (rrls_status s = require(len >= current.size(), "parameter buffer too small");
            s != RRLS_OK)
            return s;
        std::memcpy(params, current.data(), current.size() * sizeof(double));
        return RRLS_OK;
    });
}

/* ---- parameter spaces and wrappers ------------------------------------ */

rrls_status rrls_space_builtin(const char* env_id, rrls_space** out) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(env_id && out, "null argument"); s != RRLS_OK) return s;
        auto handle = std::make_unique<rrls_space>();
        handle->space = rrls::env_info(env_id).space;
        *out = handle.release();
        return RRLS_OK;
    });
}

rrls_status rrls_space_from_json(const char* json_text, rrls_space** out) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(json_text && out, "null argument"); s != RRLS_OK) return s;
        auto handle = std::make_unique<rrls_space>();
        handle->space = rrls::ParamSpace::from_json(nlohmann::json::parse(json_text));
        *out = handle.release();
        return RRLS_OK;
    });
}

rrls_status rrls_space_to_json(const rrls_space* space, char* buf, size_t cap,
                               size_t* required) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(space != nullptr, "null argument"); s != RRLS_OK) return s;
        return fill_buffer(space->space.to_json().dump(), buf, cap, required);
    });
}

void rrls_space_destroy(rrls_space* space) { delete space; }

rrls_status rrls_space_dim_count(const rrls_space* space, size_t* out) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(space && out, "null argument"); s != RRLS_OK) return s;
        *out = space->space.size();
        return RRLS_OK;
    });
}

rrls_status rrls_space_dim(const rrls_space* space, size_t index, char* name_buf,
                           size_t name_cap, double* low, double* high, double* reference) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(space != nullptr, "null argument"); s != RRLS_OK) return s;
        if (rrls_status s = require(index < space->space.size(), "dim index out of range");
            s != RRLS_OK)
            return s;
        const auto& dim = space->space.dims[index];
        if (low) *low = dim.low;
        if (high) *high = dim.high;
        if (reference) *reference = space->space.reference[index];
        if (name_buf) return fill_buffer(dim.name, name_buf, name_cap, nullptr);
        return RRLS_OK;
    });
}

rrls_status rrls_space_denormalize(const rrls_space* space, const double* u, size_t len,
                                   double* params) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(space && u && params, "null argument"); s != RRLS_OK)
            return s;
        rrls::ParamVector out =
            rrls::denormalize_params(space->space, std::span<const double>(u, len));
        std::memcpy(params, out.data(), out.size() * sizeof(double));
        return RRLS_OK;
    });
}

rrls_status rrls_env_wrap_domain_randomization(rrls_env** env, const rrls_space* space,
                                               uint64_t seed, rrls_env** out) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(space != nullptr, "null space"); s != RRLS_OK) return s;
        return wrap_common(env, out, [&](std::unique_ptr<rrls::Env> inner) {
            return rrls::wrap_domain_randomization(std::move(inner), space->space, nullptr,
                                                   seed);
        });
    });
}

rrls_status rrls_env_wrap_adversarial(rrls_env** env, const rrls_space* space,
                                      rrls_env** out) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(space != nullptr, "null space"); s != RRLS_OK) return s;
        return wrap_common(env, out, [&](std::unique_ptr<rrls::Env> inner) {
            return rrls::wrap_adversarial(std::move(inner), space->space);
        });
    });
}

rrls_status rrls_env_wrap_action_robust(rrls_env** env, double alpha, rrls_env** out) {
    return guarded([&]() -> rrls_status {
        return wrap_common(env, out, [&](std::unique_ptr<rrls::Env> inner) {
            return rrls::wrap_action_robust(std::move(inner), alpha);
        });
    });
}

/* ---- tabular MDPs and robust solvers ----------------------------------- */

rrls_status rrls_mdp_from_json(const char* json_text, rrls_mdp** out) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(json_text && out, "null argument"); s != RRLS_OK) return s;
        auto handle = std::make_unique<rrls_mdp>();
        handle->mdp = rrls::FiniteMDP::from_json(nlohmann::json::parse(json_text));
        *out = handle.release();
        return RRLS_OK;
    });
}

rrls_status rrls_mdp_to_json(const rrls_mdp* mdp, char* buf, size_t cap, size_t* required) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(mdp != nullptr, "null argument"); s != RRLS_OK) return s;
        return fill_buffer(mdp->mdp.to_json().dump(), buf, cap, required);
    });
}

void rrls_mdp_destroy(rrls_mdp* mdp) { delete mdp; }

rrls_status rrls_mdp_shape(const rrls_mdp* mdp, int* n_states, int* n_actions) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(mdp && n_states && n_actions, "null argument");
            s != RRLS_OK)
            return s;
        *n_states = mdp->mdp.n_states;
        *n_actions = mdp->mdp.n_actions;
        return RRLS_OK;
    });
}

rrls_status rrls_mdp_value_iteration(const rrls_mdp* mdp, double tol, int max_iters,
                                     double* values, int* greedy, int* iterations) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(mdp && values && greedy, "null argument"); s != RRLS_OK)
            return s;
        rrls::SolveResult result = rrls::value_iteration(mdp->mdp, tol, max_iters);
        for (int s = 0; s < mdp->mdp.n_states; ++s) {
            values[s] = result.values[s];
            greedy[s] = result.policy.mode_action(s);
        }
        if (iterations) *iterations = result.iterations;
        return RRLS_OK;
    });
}

rrls_status rrls_kernel_set_from_json(const char* json_text, rrls_kernel_set** out) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(json_text && out, "null argument"); s != RRLS_OK) return s;
        auto handle = std::make_unique<rrls_kernel_set>();
        handle->ks = rrls::KernelSet::from_json(nlohmann::json::parse(json_text));
        *out = handle.release();
        return RRLS_OK;
    });
}

void rrls_kernel_set_destroy(rrls_kernel_set* ks) { delete ks; }

rrls_status rrls_kernel_set_shape(const rrls_kernel_set* ks, int* n_states, int* n_actions,
                                  int* n_kernels) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(ks && n_states && n_actions && n_kernels, "null argument");
            s != RRLS_OK)
            return s;
        *n_states = ks->ks.base.n_states;
        *n_actions = ks->ks.base.n_actions;
        *n_kernels = ks->ks.n_kernels();
        return RRLS_OK;
    });
}

rrls_status rrls_robust_value_iteration(const rrls_kernel_set* ks, double tol, int max_iters,
                                        double* values, int* greedy, int* iterations) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(ks && values && greedy, "null argument"); s != RRLS_OK)
            return s;
        rrls::RobustSolveResult result = rrls::robust_value_iteration(ks->ks, tol, max_iters);
        for (int s = 0; s < ks->ks.base.n_states; ++s) {
            values[s] = result.values[s];
            greedy[s] = result.policy.mode_action(s);
        }
        if (iterations) *iterations = result.iterations;
        return RRLS_OK;
    });
}

rrls_status rrls_static_dynamic_gap(const rrls_kernel_set* ks, double tol,
                                    long long enumeration_cap, double* gap) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(ks && gap, "null argument"); s != RRLS_OK) return s;
        *gap = rrls::static_dynamic_gap(ks->ks, tol, enumeration_cap);
        return RRLS_OK;
    });
}

/* ---- trained policies --------------------------------------------------- */

rrls_status rrls_policy_load(const char* path, rrls_policy** out) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(path && out, "null argument"); s != RRLS_OK) return s;
        auto handle = std::make_unique<rrls_policy>();
        handle->artifact = rrls::PolicyArtifact::load(path);
        const rrls::EnvInfo& info = rrls::env_info(handle->artifact.env_id);
        handle->fn = rrls::bind_policy(handle->artifact, info.observation_dim,
                                       info.action_bounds.low, info.action_bounds.high);
        handle->obs_dim = info.observation_dim;
        handle->act_dim = info.action_dim;
        *out = handle.release();
        return RRLS_OK;
    });
}

void rrls_policy_destroy(rrls_policy* policy) { delete policy; }

rrls_status rrls_policy_env_id(const rrls_policy* policy, char* buf, size_t cap,
                               size_t* required) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(policy != nullptr, "null argument"); s != RRLS_OK)
            return s;
        return fill_buffer(policy->artifact.env_id, buf, cap, required);
    });
}

rrls_status rrls_policy_act(const rrls_policy* policy, const double* observation,
                            size_t obs_len, double* action, size_t action_len) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(policy && observation && action, "null argument");
            s != RRLS_OK)
            return s;
        if (rrls_status s = require(obs_len == static_cast<size_t>(policy->obs_dim) &&
                                        action_len == static_cast<size_t>(policy->act_dim),
                                    "observation/action length mismatch");
            s != RRLS_OK)
            return s;
        policy->fn(std::span<const double>(observation, obs_len),
                   std::span<double>(action, action_len));
        return RRLS_OK;
    });
}

/* ---- batch commands ------------------------------------------------------ */

rrls_status rrls_cmd_train(const char* config_path, const char* output_dir, int workers) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(config_path != nullptr, "null config path"); s != RRLS_OK)
            return s;
        rrls::ExperimentConfig config = rrls::ExperimentConfig::from_json_file(config_path);
        rrls::run_train(config, output_dir ? output_dir : "", rrls::resolve_workers(workers));
        return RRLS_OK;
    });
}

rrls_status rrls_cmd_evaluate(const char* policy_path, const char* config_path,
                              const char* out_csv, const char* out_json,
                              const char* base_summary, const char* target_summary,
                              int workers) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(policy_path && config_path && out_csv && out_json,
                                    "null argument");
            s != RRLS_OK)
            return s;
        rrls::ExperimentConfig config = rrls::ExperimentConfig::from_json_file(config_path);
        rrls::run_evaluate(policy_path, config, out_csv, out_json,
                           base_summary ? base_summary : "",
                           target_summary ? target_summary : "",
                           rrls::resolve_workers(workers));
        return RRLS_OK;
    });
}

rrls_status rrls_cmd_report(const char* run_dir, const char* out_dir) {
    return guarded([&]() -> rrls_status {
        if (rrls_status s = require(run_dir != nullptr, "null run directory"); s != RRLS_OK)
            return s;
        rrls::run_report(run_dir, out_dir ? out_dir : "");
        return RRLS_OK;
    });
}

} /* extern "C" */
