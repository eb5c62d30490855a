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

#include <functional>
#include <memory>
#include <random>

#include "core/env.hpp"

namespace rrls {

/// Draws a parameter vector; must land inside the wrapper's space.
using ParamSampler = std::function<ParamVector(std::mt19937_64&)>;

/// Resamples environment parameters at every reset (uniform per dim by
/// default) and keeps them fixed within the episode. The resample
/// sequence is a deterministic function of the construction seed.
std::unique_ptr<Env> wrap_domain_randomization(std::unique_ptr<Env> inner, ParamSpace space,
                                               ParamSampler sampler, std::uint64_t seed);

/// Extends the action space with an adversary part in [-1,1]^d that is
/// affinely mapped onto the parameter box (-1 -> low, +1 -> high) and
/// applied via set_params before every inner step. Observation and
/// reward pass through; by zero-sum convention the adversary's payoff is
/// the negated reward.
std::unique_ptr<Env> wrap_adversarial(std::unique_ptr<Env> inner, ParamSpace space);

/// Joint action (a, a_bar), both in the inner action box. The applied
/// action is the convex sum alpha*a + (1-alpha)*a_bar, clipped to the
/// inner bounds.
std::unique_ptr<Env> wrap_action_robust(std::unique_ptr<Env> inner, double alpha);

} // namespace rrls
