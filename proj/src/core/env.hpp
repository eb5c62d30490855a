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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nlohmann/json_fwd.hpp"

namespace rrls {

using ParamVector = std::vector<double>;

/// Named box over environment parameters plus the nominal (reference)
/// point. Degenerate dims (low == high) are allowed and denote point
/// uncertainty.
struct ParamSpace {
    struct Dim {
        std::string name;
        double low = 0.0;
        double high = 0.0;
    };

    std::vector<Dim> dims;
    ParamVector reference;

    std::size_t size() const { return dims.size(); }

    /// Throws std::invalid_argument on low > high or reference outside
    /// the box.
    void validate() const;

    /// Throws naming the first offending dim if p leaves the box.
    void check_inside(std::span<const double> p, const std::string& who) const;

    nlohmann::json to_json() const;
    static ParamSpace from_json(const nlohmann::json& doc);
};

/// Elementwise low + u * (high - low) for u in [0,1]^d. Endpoints map
/// exactly: u=0 -> low, u=1 -> high.
ParamVector denormalize_params(const ParamSpace& space, std::span<const double> u);

/// Inverse of denormalize_params on non-degenerate dims ((p-low)/(high-low);
/// degenerate dims map to 0).
ParamVector normalize_params(const ParamSpace& space, std::span<const double> p);

/// One environment transition.
struct StepResult {
    std::vector<double> observation;
    double reward = 0.0;
    bool terminated = false; // environment-defined failure or goal
    bool truncated = false;  // horizon cut
};

/// Per-dimension action box.
struct ActionBounds {
    std::vector<double> low;
    std::vector<double> high;
};

/// Environment contract: episodic step/reset plus direct access to the
/// modifiable physical parameters. set_params followed by get_params
/// returns the same vector bitwise; step before the first reset is a
/// contract violation. One instance serves one caller at a time;
/// distinct instances are independent.
class Env {
public:
    virtual ~Env() = default;

    virtual std::vector<double> reset(std::uint64_t seed) = 0;
    virtual StepResult step(std::span<const double> action) = 0;

    virtual void set_params(std::span<const double> params) = 0;
    virtual ParamVector get_params() const = 0;

    virtual int observation_dim() const = 0;
    virtual int action_dim() const = 0;
    virtual int param_dim() const = 0;
    virtual ActionBounds action_bounds() const = 0;
};

} // namespace rrls
