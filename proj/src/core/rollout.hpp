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

#include <cstdint>
#include <functional>

#include "core/env.hpp"

namespace rrls {

/// Maps an observation to an action (written into `action`).
using PolicyFn =
    std::function<void(std::span<const double> observation, std::span<double> action)>;

struct RolloutResult {
    double discounted_return = 0.0;
    double undiscounted_return = 0.0;
    int length = 0;
    bool terminated = false;
    bool truncated = false;
};

/// Runs one episode of at most `horizon` steps. Deterministic given the
/// seed. Environment faults are rethrown as EnvFault tagged with the
/// step index.
RolloutResult rollout(Env& env, const PolicyFn& policy, double gamma, int horizon,
                      std::uint64_t seed);

/// Discounted return sum_{t<T} gamma^t r_t of a single seeded rollout,
/// T = min(horizon, termination time).
double monte_carlo_return(Env& env, const PolicyFn& policy, double gamma, int horizon,
                          std::uint64_t seed);

} // namespace rrls
