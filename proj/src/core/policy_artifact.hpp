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
#include <string>
#include <vector>

#include "nlohmann/json_fwd.hpp"

#include "core/rollout.hpp"

namespace rrls {

/// Architecture of the deterministic feedforward controller: one tanh
/// hidden layer, inputs divided by fixed characteristic scales, outputs
/// affinely scaled into a per-dimension action box.
struct MlpSpec {
    int obs_dim = 0;
    int hidden = 16;
    int act_dim = 0;
    std::vector<double> obs_scale; // empty = all ones
    std::vector<double> act_low;
    std::vector<double> act_high;
};

int mlp_param_count(const MlpSpec& spec);

/// Forward pass; params laid out as [W1 (hidden x obs), b1, W2 (act x
/// hidden), b2].
void mlp_forward(const MlpSpec& spec, std::span<const double> params,
                 std::span<const double> obs, std::span<double> action);

/// Serializable trained policy. kind is "mlp" (params are network
/// weights) or "tabular" (params are per-state action indices, acting on
/// a state-index observation).
struct PolicyArtifact {
    std::string env_id;
    std::string kind = "mlp";
    int hidden = 16;
    std::vector<double> params;
    std::uint64_t seed = 0;
    std::string train_config_json = "{}"; // resolved trainer settings, as JSON text

    nlohmann::json to_json() const;
    static PolicyArtifact from_json(const nlohmann::json& doc);

    void save(const std::string& path) const;
    static PolicyArtifact load(const std::string& path);
};

/// Binds the artifact to a callable policy for the given action box.
PolicyFn bind_policy(const PolicyArtifact& artifact, int obs_dim,
                     const std::vector<double>& act_low, const std::vector<double>& act_high);

} // namespace rrls
