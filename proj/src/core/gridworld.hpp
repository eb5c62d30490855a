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

#include <memory>

#include "core/env.hpp"
#include "core/robust.hpp"

namespace rrls {

/// Environments whose exact transition kernel is available in closed
/// form. The bridge from parametric uncertainty sets to the tabular
/// solvers.
class TabularEnv {
public:
    virtual ~TabularEnv() = default;

    /// Exact FiniteMDP at the given parameter vector.
    virtual FiniteMDP tabular_mdp(std::span<const double> params) const = 0;
};

struct GridworldParams {
    double slip = 0.1;         // in [0, 0.5]
    double step_reward = -0.01;
    double goal_reward = 1.0;

    void validate() const;
};

struct GridworldConfig {
    int width = 5;
    int height = 5;
    int goal_x = 4;
    int goal_y = 4;
    int start_x = 0;
    int start_y = 0;
    int horizon = 200;
    double gamma = 0.95; // discount of the tabular view
    GridworldParams params{};
};

/// Slippery gridworld: actions {0:up, 1:right, 2:down, 3:left}; the
/// intended move succeeds with probability 1-slip, each perpendicular
/// move happens with slip/2, and moves into walls stay put. Reaching the
/// goal terminates the episode. Observation is the state index; the
/// single modifiable parameter is the slip probability. The returned
/// environment also implements TabularEnv.
std::unique_ptr<Env> gridworld_env(const GridworldConfig& config);

/// Exact kernel of the gridworld at a given slip value; the goal state
/// is absorbing with zero reward. Rows sum to one exactly.
FiniteMDP gridworld_mdp(const GridworldConfig& config, double slip);

/// Assembles the exact kernels at each parameter vector into a
/// KernelSet over the env's current-parameter base MDP. The set is
/// marked non-rectangular: one physical parameter couples all rows.
/// Throws std::invalid_argument when env is not tabular.
KernelSet extract_tabular_kernel(const Env& env, const std::vector<ParamVector>& params_list);

} // namespace rrls
