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
#include <string>
#include <vector>

#include "core/env.hpp"

namespace rrls {

/// Registry entry: static descriptors plus the bundled uncertainty
/// space for one environment id.
struct EnvInfo {
    std::string id;
    std::string description;
    int observation_dim = 0;
    int action_dim = 0;
    int param_dim = 0;
    ActionBounds action_bounds;
    ParamSpace space; // bundled default uncertainty set
    int default_horizon = 0;
};

/// Registered environments in stable (alphabetical) order.
const std::vector<EnvInfo>& env_registry();

/// Looks an id up; throws ConfigError listing the known ids.
const EnvInfo& env_info(const std::string& id);

/// Fresh instance of a registered environment at its reference
/// parameters. Throws ConfigError on unknown ids.
std::unique_ptr<Env> make_env(const std::string& id);

/// Text listing of the registry: one line per id with dims, bounds and
/// the bundled space.
std::string list_envs_text();

} // namespace rrls
