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

#include "core/policy_artifact.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "nlohmann/json.hpp"

#include "core/errors.hpp"

namespace rrls {

int mlp_param_count(const MlpSpec& spec) {
    return spec.hidden * spec.obs_dim + spec.hidden + spec.act_dim * spec.hidden + spec.act_dim;
}

void mlp_forward(const MlpSpec& spec, std::span<const double> params,
                 std::span<const double> obs, std::span<double> action) {
    if (static_cast<int>(params.size()) != mlp_param_count(spec))
        throw std::invalid_argument("mlp_forward: parameter count mismatch");
    if (static_cast<int>(obs.size()) != spec.obs_dim ||
        static_cast<int>(action.size()) != spec.act_dim)
        throw std::invalid_argument("mlp_forward: observation/action shape mismatch");

    const double* w1 = params.data();
    const double* b1 = w1 + static_cast<std::size_t>(spec.hidden) * spec.obs_dim;
    const double* w2 = b1 + spec.hidden;
    const double* b2 = w2 + static_cast<std::size_t>(spec.act_dim) * spec.hidden;

    std::vector<double> hidden(static_cast<std::size_t>(spec.hidden));
    for (int h = 0; h < spec.hidden; ++h) {
        double acc = b1[h];
        for (int i = 0; i < spec.obs_dim; ++i) {
            double x = spec.obs_scale.empty() ? obs[i] : obs[i] / spec.obs_scale[i];
            acc += w1[static_cast<std::size_t>(h) * spec.obs_dim + i] * x;
        }
        hidden[h] = std::tanh(acc);
    }
    for (int o = 0; o < spec.act_dim; ++o) {
        double acc = b2[o];
        for (int h = 0; h < spec.hidden; ++h)
            acc += w2[static_cast<std::size_t>(o) * spec.hidden + h] * hidden[h];
        double center = 0.5 * (spec.act_high[o] + spec.act_low[o]);
        double half = 0.5 * (spec.act_high[o] - spec.act_low[o]);
        action[o] = center + half * std::tanh(acc);
    }
}

nlohmann::json PolicyArtifact::to_json() const {
    return nlohmann::json{{"env_id", env_id},
                          {"arch", {{"type", kind}, {"hidden", hidden}}},
                          {"params", params},
                          {"train_config", nlohmann::json::parse(train_config_json)},
                          {"seed", seed}};
}

PolicyArtifact PolicyArtifact::from_json(const nlohmann::json& doc) {
    PolicyArtifact artifact;
    try {
        artifact.env_id = doc.at("env_id").get<std::string>();
        const auto& arch = doc.at("arch");
        artifact.kind = arch.value("type", "mlp");
        artifact.hidden = arch.value("hidden", 16);
        artifact.params = doc.at("params").get<std::vector<double>>();
        artifact.seed = doc.at("seed").get<std::uint64_t>();
        artifact.train_config_json = doc.value("train_config", nlohmann::json::object()).dump();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("PolicyArtifact: malformed document: ") +
                                    e.what());
    }
    for (double p : artifact.params)
        if (!std::isfinite(p))
            throw std::invalid_argument("PolicyArtifact: non-finite parameter");
    return artifact;
}

void PolicyArtifact::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write policy file '" + path + "'");
    out << to_json().dump(2) << "\n";
}

PolicyArtifact PolicyArtifact::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read policy file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("PolicyArtifact: invalid JSON in '" + path +
                                    "': " + e.what());
    }
    return from_json(doc);
}

PolicyFn bind_policy(const PolicyArtifact& artifact, int obs_dim,
                     const std::vector<double>& act_low, const std::vector<double>& act_high) {
    if (artifact.kind == "tabular") {
        std::vector<double> table = artifact.params;
        return [table](std::span<const double> obs, std::span<double> action) {
            auto s = static_cast<std::size_t>(std::lround(obs[0]));
            if (s >= table.size())
                throw std::invalid_argument("tabular policy: state index out of range");
            action[0] = table[s];
        };
    }
    if (artifact.kind != "mlp")
        throw std::invalid_argument("PolicyArtifact: unknown policy type '" + artifact.kind +
                                    "'");
    MlpSpec spec;
    spec.obs_dim = obs_dim;
    spec.hidden = artifact.hidden;
    spec.act_dim = static_cast<int>(act_low.size());
    spec.act_low = act_low;
    spec.act_high = act_high;
    if (static_cast<int>(artifact.params.size()) != mlp_param_count(spec))
        throw std::invalid_argument("PolicyArtifact: parameter count does not match arch");
    std::vector<double> params = artifact.params;
    return [spec, params](std::span<const double> obs, std::span<double> action) {
        mlp_forward(spec, params, obs, action);
    };
}

} // namespace rrls
