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

#pragma once

#include <optional>

#include "core/cem.hpp"
#include "core/env.hpp"
#include "core/policy_artifact.hpp"
#include "core/robust.hpp"

namespace rrls {

struct TrainerOptions {
    int population = 64;
    double elite_frac = 0.125;
    int hidden = 16;
    int episodes_per_eval = 3; // episodes per fitness evaluation, common
                               // seeds within a generation
    double init_std = 1.0;
    double std_floor = 1e-3;
    int rounds = 5;            // alternating best-response rounds
    int adversary_mesh_dim = 2; // per-dim mesh points for train_worstcase
    double alpha = 0.9;        // action-robust mixing weight
    std::optional<int> horizon; // default: the env's registered horizon
};

struct TrainOutcome {
    PolicyArtifact policy;
    std::optional<PolicyArtifact> adversary;
    TrainLog log;
    long long steps_used = 0;
};

/// Fitness = mean return over seeded episodes at the reference
/// parameters.
TrainOutcome train_nominal(const std::string& env_id, long long budget, std::uint64_t seed,
                           const TrainerOptions& options = {});

/// Fitness = mean return with parameters redrawn uniformly from the
/// space at every episode (domain randomization).
TrainOutcome train_dr(const std::string& env_id, const ParamSpace& space, long long budget,
                      std::uint64_t seed, const TrainerOptions& options = {});

/// Explicit max-min: fitness is the minimum over a parameter mesh of the
/// mean episode return. mesh_dim >= 2 spans the box with mesh_dim points
/// per dimension; mesh_dim == 1 degenerates to the reference point.
TrainOutcome train_worstcase(const std::string& env_id, const ParamSpace& space,
                             long long budget, std::uint64_t seed, int mesh_dim,
                             const TrainerOptions& options = {});

/// Alternating best-response on the adversarial wrapper: each round
/// optimizes the agent against the frozen adversary, then the adversary
/// (negated return) against the frozen agent.
TrainOutcome train_adversarial(const std::string& env_id, const ParamSpace& space,
                               long long budget, std::uint64_t seed,
                               const TrainerOptions& options = {});

/// Alternating best-response on the action-robust wrapper with mixing
/// weight alpha in (0, 1].
TrainOutcome train_action_robust(const std::string& env_id, double alpha, long long budget,
                                 std::uint64_t seed, const TrainerOptions& options = {});

/// Exact tabular reference agent: greedy policy of robust value
/// iteration over the kernel set.
Policy tabular_robust_agent(const KernelSet& ks, double tol = 1e-8);

/// Mean undiscounted return of the trained agent against its trained
/// adversary on the wrapped environment (post-training head-to-head
/// rollouts).
double rollout_vs_adversary(const std::string& env_id, const ParamSpace& space,
                            const PolicyArtifact& agent, const PolicyArtifact& adversary,
                            int episodes, std::uint64_t seed);

} // namespace rrls
