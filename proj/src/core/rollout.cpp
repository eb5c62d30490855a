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

#include "core/rollout.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include "core/errors.hpp"

namespace rrls {

RolloutResult rollout(Env& env, const PolicyFn& policy, double gamma, int horizon,
                      std::uint64_t seed) {
    if (horizon < 1) throw std::invalid_argument("rollout: horizon must be >= 1");
    RolloutResult result;
    std::vector<double> obs = env.reset(seed);
    std::vector<double> action(static_cast<std::size_t>(env.action_dim()), 0.0);
    double discount = 1.0;
    for (int t = 0; t < horizon; ++t) {
        policy(obs, action);
        StepResult sr;
        try {
            sr = env.step(action);
        } catch (const EnvFault& e) {
            throw EnvFault("environment fault at step " + std::to_string(t) + ": " + e.what());
        }
        result.discounted_return += discount * sr.reward;
        result.undiscounted_return += sr.reward;
        result.length = t + 1;
        discount *= gamma;
        if (sr.terminated || sr.truncated) {
            result.terminated = sr.terminated;
            result.truncated = sr.truncated;
            break;
        }
        obs = std::move(sr.observation);
    }
    return result;
}

double monte_carlo_return(Env& env, const PolicyFn& policy, double gamma, int horizon,
                          std::uint64_t seed) {
    return rollout(env, policy, gamma, horizon, seed).discounted_return;
}

} // namespace rrls
