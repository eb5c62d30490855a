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

#include "core/trainers.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <utility>

#include "nlohmann/json.hpp"

#include "core/errors.hpp"
#include "core/gridworld.hpp"
#include "core/mesh.hpp"
#include "core/registry.hpp"
#include "core/rng.hpp"
#include "core/rollout.hpp"
#include "core/wrappers.hpp"

namespace rrls {

namespace {

// Seed stream tags; generation-common episode seeds give every candidate
// in a generation the same episode draws.
constexpr std::uint64_t kEpisodeStream = 1;
constexpr std::uint64_t kParamStream = 2;
constexpr std::uint64_t kRoundStream = 3;

std::uint64_t stream_seed(std::uint64_t run_seed, std::uint64_t stream, std::uint64_t gen,
                          std::uint64_t item) {
    return mix_seed(run_seed, (stream << 40) + gen, item);
}

/// Exact env-step ledger shared by every rollout of one trainer run.
struct StepBudget {
    long long budget = 0;
    long long used = 0;

    bool fits(int horizon) const { return used + horizon <= budget; }
    void charge(int steps) { used += steps; }
};

struct FitnessContext {
    const EnvInfo* info = nullptr;
    MlpSpec spec;
    StepBudget budget;
    int horizon = 0;
    int episodes = 0;
    std::uint64_t run_seed = 0;
    long long evals = 0; // fitness calls so far; generation = evals / population
    int population = 0;

    long long generation() const { return evals / population; }
};

PolicyFn mlp_policy_fn(const MlpSpec& spec, std::span<const double> params) {
    return [&spec, params](std::span<const double> obs, std::span<double> action) {
        mlp_forward(spec, params, obs, action);
    };
}

MlpSpec make_spec(const EnvInfo& info, int hidden) {
    MlpSpec spec;
    spec.obs_dim = info.observation_dim;
    spec.hidden = hidden;
    spec.act_dim = info.action_dim;
    spec.act_low = info.action_bounds.low;
    spec.act_high = info.action_bounds.high;
    return spec;
}

CemOptions make_cem_options(const MlpSpec& spec, const TrainerOptions& options,
                            std::uint64_t seed) {
    CemOptions cem;
    cem.dim = mlp_param_count(spec);
    cem.population = options.population;
    cem.elite_frac = options.elite_frac;
    cem.max_iterations = 1 << 20; // the step budget is the real stop
    cem.seed = seed;
    cem.init_std = options.init_std;
    cem.std_floor = options.std_floor;
    return cem;
}

int resolve_horizon(const EnvInfo& info, const TrainerOptions& options) {
    int horizon = options.horizon.value_or(info.default_horizon);
    if (horizon < 1) throw std::invalid_argument("trainer: horizon must be >= 1");
    return horizon;
}

void check_budget(long long budget, long long minimum, const std::string& who) {
    if (budget < minimum)
        throw ConfigError(who + ": budget " + std::to_string(budget) +
                          " below the minimum of " + std::to_string(minimum) +
                          " env steps (one fitness evaluation)");
}

nlohmann::json options_json(const TrainerOptions& options, const EnvInfo& info) {
    return nlohmann::json{{"population", options.population},
                          {"elite_frac", options.elite_frac},
                          {"hidden", options.hidden},
                          {"episodes_per_eval", options.episodes_per_eval},
                          {"init_std", options.init_std},
                          {"horizon", options.horizon.value_or(info.default_horizon)}};
}

PolicyArtifact make_artifact(const EnvInfo& info, const TrainerOptions& options,
                             std::uint64_t seed, std::vector<double> params,
                             const std::string& algorithm, const nlohmann::json& extra = {}) {
    PolicyArtifact artifact;
    artifact.env_id = info.id;
    artifact.kind = "mlp";
    artifact.hidden = options.hidden;
    artifact.params = std::move(params);
    artifact.seed = seed;
    nlohmann::json config = options_json(options, info);
    config["algorithm"] = algorithm;
    for (auto& [key, value] : extra.items()) config[key] = value;
    artifact.train_config_json = config.dump();
    return artifact;
}

/// Runs one fitness rollout under the budget gate. Returns std::nullopt
/// when the episode would not fit into the remaining budget.
std::optional<double> gated_rollout(Env& env, const PolicyFn& policy, FitnessContext& ctx,
                                    std::uint64_t seed) {
    if (!ctx.budget.fits(ctx.horizon)) return std::nullopt;
    RolloutResult r = rollout(env, policy, 1.0, ctx.horizon, seed);
    ctx.budget.charge(r.length);
    return r.undiscounted_return;
}

TrainOutcome finish(const EnvInfo& info, const TrainerOptions& options, std::uint64_t seed,
                    CemResult&& cem, const std::string& algorithm,
                    const nlohmann::json& extra = {}) {
    TrainOutcome outcome;
    outcome.policy =
        make_artifact(info, options, seed, std::move(cem.best), algorithm, extra);
    outcome.log = std::move(cem.log);
    return outcome;
}

} // namespace

TrainOutcome train_nominal(const std::string& env_id, long long budget, std::uint64_t seed,
                           const TrainerOptions& options) {
    const EnvInfo& info = env_info(env_id);
    FitnessContext ctx;
    ctx.info = &info;
    ctx.spec = make_spec(info, options.hidden);
    ctx.budget.budget = budget;
    ctx.horizon = resolve_horizon(info, options);
    ctx.episodes = options.episodes_per_eval;
    ctx.run_seed = seed;
    ctx.population = options.population;
    check_budget(budget, static_cast<long long>(ctx.horizon) * ctx.episodes, "train_nominal");

    std::unique_ptr<Env> env = make_env(env_id);
    CemFitness fitness = [&](std::span<const double> x) -> std::optional<double> {
        long long gen = ctx.generation();
        ++ctx.evals;
        PolicyFn policy = mlp_policy_fn(ctx.spec, x);
        double total = 0.0;
        for (int j = 0; j < ctx.episodes; ++j) {
            auto r = gated_rollout(*env, policy, ctx,
                                   stream_seed(ctx.run_seed, kEpisodeStream, gen, j));
            if (!r) return std::nullopt;
            total += *r;
        }
        return total / ctx.episodes;
    };

    CemResult cem = cem_optimize(fitness, make_cem_options(ctx.spec, options, seed),
                                 [&]() { return ctx.budget.used; });
    TrainOutcome outcome = finish(info, options, seed, std::move(cem), "nominal",
                                  {{"budget", budget}});
    outcome.steps_used = ctx.budget.used;
    return outcome;
}

TrainOutcome train_dr(const std::string& env_id, const ParamSpace& space, long long budget,
                      std::uint64_t seed, const TrainerOptions& options) {
    const EnvInfo& info = env_info(env_id);
    space.validate();
    FitnessContext ctx;
    ctx.info = &info;
    ctx.spec = make_spec(info, options.hidden);
    ctx.budget.budget = budget;
    ctx.horizon = resolve_horizon(info, options);
    ctx.episodes = options.episodes_per_eval;
    ctx.run_seed = seed;
    ctx.population = options.population;
    check_budget(budget, static_cast<long long>(ctx.horizon) * ctx.episodes, "train_dr");

    CemFitness fitness = [&](std::span<const double> x) -> std::optional<double> {
        long long gen = ctx.generation();
        ++ctx.evals;
        PolicyFn policy = mlp_policy_fn(ctx.spec, x);
        double total = 0.0;
        for (int j = 0; j < ctx.episodes; ++j) {
            // A fresh wrapper per episode keyed on (gen, episode) makes
            // the parameter draw common across the generation.
            auto env = wrap_domain_randomization(
                make_env(env_id), space, nullptr,
                stream_seed(ctx.run_seed, kParamStream, gen, j));
            auto r = gated_rollout(*env, policy, ctx,
                                   stream_seed(ctx.run_seed, kEpisodeStream, gen, j));
            if (!r) return std::nullopt;
            total += *r;
        }
        return total / ctx.episodes;
    };

    CemResult cem = cem_optimize(fitness, make_cem_options(ctx.spec, options, seed),
                                 [&]() { return ctx.budget.used; });
    TrainOutcome outcome = finish(info, options, seed, std::move(cem), "dr",
                                  {{"budget", budget}, {"space", space.to_json()}});
    outcome.steps_used = ctx.budget.used;
    return outcome;
}

TrainOutcome train_worstcase(const std::string& env_id, const ParamSpace& space,
                             long long budget, std::uint64_t seed, int mesh_dim,
                             const TrainerOptions& options) {
    const EnvInfo& info = env_info(env_id);
    space.validate();
    if (mesh_dim < 1)
        throw std::invalid_argument("train_worstcase: mesh_dim must be >= 1");
    std::vector<ParamVector> cells;
    if (mesh_dim == 1)
        cells.push_back(space.reference); // degenerate mesh: reference only
    else
        cells = generate_evaluation_set(space, mesh_dim).cells;

    FitnessContext ctx;
    ctx.info = &info;
    ctx.spec = make_spec(info, options.hidden);
    ctx.budget.budget = budget;
    ctx.horizon = resolve_horizon(info, options);
    ctx.episodes = options.episodes_per_eval;
    ctx.run_seed = seed;
    ctx.population = options.population;
    check_budget(budget,
                 static_cast<long long>(ctx.horizon) * ctx.episodes *
                     static_cast<long long>(cells.size()),
                 "train_worstcase");

    std::unique_ptr<Env> env = make_env(env_id);
    CemFitness fitness = [&](std::span<const double> x) -> std::optional<double> {
        long long gen = ctx.generation();
        ++ctx.evals;
        PolicyFn policy = mlp_policy_fn(ctx.spec, x);
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < cells.size(); ++c) {
            env->set_params(cells[c]);
            double total = 0.0;
            for (int j = 0; j < ctx.episodes; ++j) {
                auto r = gated_rollout(
                    *env, policy, ctx,
                    stream_seed(ctx.run_seed, kEpisodeStream, gen, c * 1024 + j));
                if (!r) return std::nullopt;
                total += *r;
            }
            worst = std::min(worst, total / ctx.episodes);
        }
        return worst;
    };

    CemResult cem = cem_optimize(fitness, make_cem_options(ctx.spec, options, seed),
                                 [&]() { return ctx.budget.used; });
    TrainOutcome outcome = finish(info, options, seed, std::move(cem), "worstcase",
                                  {{"budget", budget},
                                   {"space", space.to_json()},
                                   {"adversary_mesh_dim", mesh_dim}});
    outcome.steps_used = ctx.budget.used;
    return outcome;
}

namespace {

/// Shared alternating best-response loop for the two wrapper games. The
/// wrapper factory builds a fresh wrapped env; adversary_dim is the size
/// of the adversary slot in the joint action.
TrainOutcome alternating_best_response(
    const EnvInfo& info, const TrainerOptions& options, long long budget, std::uint64_t seed,
    const std::function<std::unique_ptr<Env>()>& make_wrapped, int adversary_dim,
    const std::vector<double>& adversary_low, const std::vector<double>& adversary_high,
    const std::string& algorithm, const nlohmann::json& extra) {
    int horizon = resolve_horizon(info, options);
    int rounds = options.rounds;
    if (rounds < 1) throw std::invalid_argument("trainer: rounds must be >= 1");
    long long phase_budget = budget / (2 * rounds);
    long long min_phase = static_cast<long long>(horizon) * options.episodes_per_eval;
    if (phase_budget < min_phase)
        throw ConfigError(algorithm + ": budget " + std::to_string(budget) +
                          " too small for one full round (needs >= " +
                          std::to_string(min_phase * 2 * rounds) + ")");

    MlpSpec agent_spec = make_spec(info, options.hidden);
    MlpSpec adversary_spec;
    adversary_spec.obs_dim = info.observation_dim;
    adversary_spec.hidden = options.hidden;
    adversary_spec.act_dim = adversary_dim;
    adversary_spec.act_low = adversary_low;
    adversary_spec.act_high = adversary_high;

    std::vector<double> agent(mlp_param_count(agent_spec), 0.0);
    std::vector<double> adversary(mlp_param_count(adversary_spec), 0.0);

    StepBudget ledger;
    ledger.budget = budget;
    TrainLog log;
    int log_iteration = 0;
    double last_best = 0.0;

    std::unique_ptr<Env> env = make_wrapped();
    int agent_dim_count = info.action_dim;

    auto joint_policy = [&](std::span<const double> agent_params,
                            std::span<const double> adversary_params) -> PolicyFn {
        return [&, agent_params, adversary_params](std::span<const double> obs,
                                                   std::span<double> action) {
            mlp_forward(agent_spec, agent_params, obs,
                        action.subspan(0, agent_dim_count));
            mlp_forward(adversary_spec, adversary_params, obs,
                        action.subspan(agent_dim_count, adversary_dim));
        };
    };

    for (int round = 0; round < rounds; ++round) {
        for (int phase = 0; phase < 2; ++phase) {
            bool agent_phase = phase == 0;
            long long phase_cap = std::min(budget, ledger.used + phase_budget);
            long long evals = 0;
            CemFitness fitness = [&](std::span<const double> x) -> std::optional<double> {
                long long gen = evals / options.population;
                ++evals;
                PolicyFn policy = agent_phase ? joint_policy(x, adversary)
                                              : joint_policy(agent, x);
                double total = 0.0;
                for (int j = 0; j < options.episodes_per_eval; ++j) {
                    if (ledger.used + horizon > phase_cap) return std::nullopt;
                    RolloutResult r = rollout(
                        *env, policy, 1.0, horizon,
                        stream_seed(seed, kRoundStream,
                                    static_cast<std::uint64_t>(round) * 2 + phase, gen * 64 + j));
                    ledger.charge(r.length);
                    total += r.undiscounted_return;
                }
                double mean = total / options.episodes_per_eval;
                return agent_phase ? mean : -mean; // adversary maximizes -r
            };

            CemOptions cem_options = make_cem_options(
                agent_phase ? agent_spec : adversary_spec, options,
                mix_seed(seed, 0x5EED, static_cast<std::uint64_t>(round) * 2 + phase));
            CemResult cem = cem_optimize(fitness, cem_options, [&]() { return ledger.used; });
            if (agent_phase) {
                agent = cem.best;
                last_best = cem.best_fitness;
                for (TrainLogEntry entry : cem.log.entries) {
                    entry.iteration = ++log_iteration;
                    log.entries.push_back(entry);
                }
            } else {
                adversary = cem.best;
            }
        }
    }

    TrainOutcome outcome;
    nlohmann::json config = extra;
    config["rounds"] = rounds;
    config["budget"] = budget;
    outcome.policy = make_artifact(info, options, seed, std::move(agent), algorithm, config);
    config["role"] = "adversary";
    outcome.adversary = make_artifact(info, options, seed, std::move(adversary), algorithm,
                                      config);
    outcome.log = std::move(log);
    outcome.steps_used = ledger.used;
    (void)last_best;
    return outcome;
}

} // namespace

TrainOutcome train_adversarial(const std::string& env_id, const ParamSpace& space,
                               long long budget, std::uint64_t seed,
                               const TrainerOptions& options) {
    const EnvInfo& info = env_info(env_id);
    space.validate();
    int d = static_cast<int>(space.size());
    std::vector<double> low(d, -1.0), high(d, 1.0);
    return alternating_best_response(
        info, options, budget, seed,
        [&]() { return wrap_adversarial(make_env(env_id), space); }, d, low, high,
        "adversarial", {{"space", space.to_json()}});
}

TrainOutcome train_action_robust(const std::string& env_id, double alpha, long long budget,
                                 std::uint64_t seed, const TrainerOptions& options) {
    const EnvInfo& info = env_info(env_id);
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("train_action_robust: alpha must lie in (0,1]");
    return alternating_best_response(
        info, options, budget, seed,
        [&]() { return wrap_action_robust(make_env(env_id), alpha); }, info.action_dim,
        info.action_bounds.low, info.action_bounds.high, "action-robust",
        {{"alpha", alpha}});
}

Policy tabular_robust_agent(const KernelSet& ks, double tol) {
    return robust_value_iteration(ks, tol).policy;
}

double rollout_vs_adversary(const std::string& env_id, const ParamSpace& space,
                            const PolicyArtifact& agent, const PolicyArtifact& adversary,
                            int episodes, std::uint64_t seed) {
    const EnvInfo& info = env_info(env_id);
    if (episodes < 1)
        throw std::invalid_argument("rollout_vs_adversary: episodes must be >= 1");
    auto env = wrap_adversarial(make_env(env_id), space);
    int d = static_cast<int>(space.size());
    PolicyFn agent_fn = bind_policy(agent, info.observation_dim, info.action_bounds.low,
                                    info.action_bounds.high);
    PolicyFn adversary_fn = bind_policy(adversary, info.observation_dim,
                                        std::vector<double>(d, -1.0),
                                        std::vector<double>(d, 1.0));
    PolicyFn joint = [&](std::span<const double> obs, std::span<double> action) {
        agent_fn(obs, action.subspan(0, info.action_dim));
        adversary_fn(obs, action.subspan(info.action_dim, d));
    };
    double total = 0.0;
    for (int e = 0; e < episodes; ++e)
        total += rollout(*env, joint, 1.0, info.default_horizon, mix_seed(seed, 0xAD, e))
                     .undiscounted_return;
    return total / episodes;
}

} // namespace rrls
