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

#include "core/registry.hpp"

#include <sstream>

#include "core/cartpole.hpp"
#include "core/errors.hpp"
#include "core/gridworld.hpp"

namespace rrls {

namespace {

ParamSpace masses_space() {
    ParamSpace space;
    space.dims = {{"pole_mass", 1.0, 31.0}, {"cart_mass", 1.0, 11.0}};
    space.reference = {4.90, 9.42};
    return space;
}

ParamSpace forces_space() {
    ParamSpace space;
    space.dims = {{"pole_force_x", -3.0, 3.0}, {"pole_force_y", -3.0, 3.0}};
    space.reference = {0.0, 0.0};
    return space;
}

ParamSpace slip_space() {
    ParamSpace space;
    space.dims = {{"slip", 0.0, 0.5}};
    space.reference = {0.1};
    return space;
}

std::vector<EnvInfo> build_registry() {
    std::vector<EnvInfo> registry;
    registry.push_back({"cartpole-forces",
                        "cart-pole balance, disturbance forces at the pole tip",
                        4,
                        1,
                        2,
                        {{-kCartPoleForceLimit}, {kCartPoleForceLimit}},
                        forces_space(),
                        1000});
    registry.push_back({"cartpole-masses",
                        "cart-pole balance, modifiable pole and cart masses",
                        4,
                        1,
                        2,
                        {{-kCartPoleForceLimit}, {kCartPoleForceLimit}},
                        masses_space(),
                        1000});
    registry.push_back({"gridworld-slip",
                        "5x5 slippery gridworld, modifiable slip probability",
                        1,
                        1,
                        1,
                        {{0.0}, {3.0}},
                        slip_space(),
                        200});
    return registry;
}

} // namespace

const std::vector<EnvInfo>& env_registry() {
    static const std::vector<EnvInfo> registry = build_registry();
    return registry;
}

const EnvInfo& env_info(const std::string& id) {
    for (const EnvInfo& info : env_registry())
        if (info.id == id) return info;
    std::string known;
    for (const EnvInfo& info : env_registry()) {
        if (!known.empty()) known += ", ";
        known += info.id;
    }
    throw ConfigError("unknown environment id '" + id + "' (known ids: " + known + ")");
}

std::unique_ptr<Env> make_env(const std::string& id) {
    if (id == "cartpole-masses") return cartpole_env("masses");
    if (id == "cartpole-forces") return cartpole_env("forces");
    if (id == "gridworld-slip") {
        GridworldConfig config;
        return gridworld_env(config);
    }
    env_info(id); // throws with the known-id list
    throw ConfigError("unknown environment id '" + id + "'");
}

std::string list_envs_text() {
    std::ostringstream out;
    for (const EnvInfo& info : env_registry()) {
        out << info.id << "  obs_dim=" << info.observation_dim
            << " action_dim=" << info.action_dim << " action_box=[" << info.action_bounds.low[0]
            << "," << info.action_bounds.high[0] << "]"
            << " horizon=" << info.default_horizon << "\n    " << info.description << "\n";
        out << "    space:";
        for (std::size_t i = 0; i < info.space.size(); ++i) {
            const auto& d = info.space.dims[i];
            out << " " << d.name << "[" << d.low << "," << d.high
                << "]@" << info.space.reference[i];
        }
        out << "\n";
    }
    return out.str();
}

} // namespace rrls
