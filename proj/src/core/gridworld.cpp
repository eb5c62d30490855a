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

#include "core/gridworld.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace rrls {

namespace {

// dx/dy per action: up, right, down, left.
constexpr int kMoveX[4] = {0, 1, 0, -1};
constexpr int kMoveY[4] = {-1, 0, 1, 0};

void check_config(const GridworldConfig& config) {
    if (config.width < 1 || config.height < 1)
        throw std::invalid_argument("Gridworld: grid dimensions must be positive");
    if (static_cast<long long>(config.width) * config.height < 2)
        throw std::invalid_argument("Gridworld: need at least two cells");
    auto inside = [&](int x, int y) {
        return x >= 0 && x < config.width && y >= 0 && y < config.height;
    };
    if (!inside(config.goal_x, config.goal_y))
        throw std::invalid_argument("Gridworld: goal cell outside grid");
    if (!inside(config.start_x, config.start_y))
        throw std::invalid_argument("Gridworld: start cell outside grid");
    if (!(config.gamma >= 0.0 && config.gamma < 1.0))
        throw std::invalid_argument("Gridworld: gamma must lie in [0,1)");
    if (config.horizon < 1) throw std::invalid_argument("Gridworld: horizon must be >= 1");
    config.params.validate();
}

int clamp_move(const GridworldConfig& config, int s, int a) {
    int x = s % config.width;
    int y = s / config.width;
    int nx = x + kMoveX[a];
    int ny = y + kMoveY[a];
    if (nx < 0 || nx >= config.width || ny < 0 || ny >= config.height) return s;
    return ny * config.width + nx;
}

/// Destination distribution for (s, a): intended move with 1-slip, the
/// two perpendicular moves with slip/2 each. The largest entry is nudged
/// so the row sums to 1.0 exactly.
void fill_row(const GridworldConfig& config, double slip, int s, int a, double* row,
              int n_states) {
    for (int i = 0; i < n_states; ++i) row[i] = 0.0;
    row[clamp_move(config, s, a)] += 1.0 - slip;
    int lat1 = (a + 1) % 4;
    int lat2 = (a + 3) % 4;
    row[clamp_move(config, s, lat1)] += slip / 2.0;
    row[clamp_move(config, s, lat2)] += slip / 2.0;
    for (int pass = 0; pass < 4; ++pass) {
        double sum = std::accumulate(row, row + n_states, 0.0);
        if (sum == 1.0) return;
        int largest = 0;
        for (int i = 1; i < n_states; ++i)
            if (row[i] > row[largest]) largest = i;
        row[largest] += 1.0 - sum;
    }
    throw EnvFault("gridworld: kernel row failed to normalize exactly");
}

class GridworldEnv final : public Env, public TabularEnv {
public:
    explicit GridworldEnv(const GridworldConfig& config) : config_(config) {
        check_config(config_);
    }

    std::vector<double> reset(std::uint64_t seed) override {
        engine_ = make_engine(seed);
        state_ = config_.start_y * config_.width + config_.start_x;
        steps_ = 0;
        ready_ = true;
        done_ = false;
        return {static_cast<double>(state_)};
    }

    StepResult step(std::span<const double> action) override {
        if (!ready_) throw std::logic_error("GridworldEnv: step called before reset");
        if (done_) throw std::logic_error("GridworldEnv: episode finished, call reset");
        if (action.size() != 1)
            throw std::invalid_argument("GridworldEnv: action must have one entry");
        int a = static_cast<int>(std::lround(action[0]));
        a = std::clamp(a, 0, 3);

        double slip = config_.params.slip;
        double draw = std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
        int realized = a;
        if (draw < slip / 2.0)
            realized = (a + 1) % 4;
        else if (draw < slip)
            realized = (a + 3) % 4;
        state_ = clamp_move(config_, state_, realized);
        ++steps_;

        StepResult result;
        result.observation = {static_cast<double>(state_)};
        bool at_goal = state_ == config_.goal_y * config_.width + config_.goal_x;
        result.reward = config_.params.step_reward + (at_goal ? config_.params.goal_reward : 0.0);
        result.terminated = at_goal;
        result.truncated = steps_ >= config_.horizon;
        done_ = result.terminated || result.truncated;
        return result;
    }

    void set_params(std::span<const double> params) override {
        if (params.size() != 1)
            throw std::invalid_argument("GridworldEnv: expected 1 parameter (slip)");
        GridworldParams next = config_.params;
        next.slip = params[0];
        next.validate();
        config_.params = next;
    }

    ParamVector get_params() const override { return {config_.params.slip}; }

    int observation_dim() const override { return 1; }
    int action_dim() const override { return 1; }
    int param_dim() const override { return 1; }
    ActionBounds action_bounds() const override { return {{0.0}, {3.0}}; }

    FiniteMDP tabular_mdp(std::span<const double> params) const override {
        if (params.size() != 1)
            throw std::invalid_argument("GridworldEnv: expected 1 parameter (slip)");
        return gridworld_mdp(config_, params[0]);
    }

private:
    GridworldConfig config_;
    std::mt19937_64 engine_;
    int state_ = 0;
    int steps_ = 0;
    bool ready_ = false;
    bool done_ = false;
};

} // namespace

void GridworldParams::validate() const {
    if (!(slip >= 0.0 && slip <= 0.5))
        throw std::invalid_argument("GridworldParams: slip must lie in [0, 0.5]");
    if (!std::isfinite(step_reward) || !std::isfinite(goal_reward))
        throw std::invalid_argument("GridworldParams: rewards must be finite");
}

std::unique_ptr<Env> gridworld_env(const GridworldConfig& config) {
    return std::make_unique<GridworldEnv>(config);
}

FiniteMDP gridworld_mdp(const GridworldConfig& config, double slip) {
    check_config(config);
    GridworldParams probe = config.params;
    probe.slip = slip;
    probe.validate();

    int n = config.width * config.height;
    int goal = config.goal_y * config.width + config.goal_x;
    FiniteMDP mdp = FiniteMDP::zeros(n, 4, config.gamma);
    mdp.rho.assign(n, 0.0);
    mdp.rho[config.start_y * config.width + config.start_x] = 1.0;
    for (int s = 0; s < n; ++s)
        for (int a = 0; a < 4; ++a) {
            double* row = &mdp.kernel[(static_cast<std::size_t>(s) * 4 + a) * n];
            if (s == goal) {
                // Absorbing goal: no further reward.
                row[s] = 1.0;
                mdp.r(s, a) = 0.0;
                continue;
            }
            fill_row(config, slip, s, a, row, n);
            mdp.r(s, a) = config.params.step_reward + row[goal] * config.params.goal_reward;
        }
    mdp.validate();
    return mdp;
}

KernelSet extract_tabular_kernel(const Env& env, const std::vector<ParamVector>& params_list) {
    const auto* tabular = dynamic_cast<const TabularEnv*>(&env);
    if (!tabular)
        throw std::invalid_argument(
            "extract_tabular_kernel: environment has no exact tabular form");
    if (params_list.empty())
        throw std::invalid_argument("extract_tabular_kernel: empty parameter list");
    KernelSet ks;
    ks.base = tabular->tabular_mdp(env.get_params());
    ks.rectangular = false;
    for (const ParamVector& params : params_list)
        ks.kernels.push_back(tabular->tabular_mdp(params).kernel);
    ks.validate();
    return ks;
}

} // namespace rrls
