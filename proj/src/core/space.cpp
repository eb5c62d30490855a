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

#include "core/env.hpp"

#include <cmath>
#include <stdexcept>

#include "nlohmann/json.hpp"

namespace rrls {

void ParamSpace::validate() const {
    if (dims.empty()) throw std::invalid_argument("ParamSpace: no dims");
    if (reference.size() != dims.size())
        throw std::invalid_argument("ParamSpace: reference size mismatch");
    for (std::size_t i = 0; i < dims.size(); ++i) {
        const Dim& d = dims[i];
        if (!std::isfinite(d.low) || !std::isfinite(d.high) || d.low > d.high)
            throw std::invalid_argument("ParamSpace: dim '" + d.name + "' has invalid bounds");
        if (reference[i] < d.low || reference[i] > d.high)
            throw std::invalid_argument("ParamSpace: reference for dim '" + d.name +
                                        "' lies outside [low, high]");
    }
}

void ParamSpace::check_inside(std::span<const double> p, const std::string& who) const {
    if (p.size() != dims.size())
        throw std::invalid_argument(who + ": expected " + std::to_string(dims.size()) +
                                    " parameters, got " + std::to_string(p.size()));
    for (std::size_t i = 0; i < dims.size(); ++i)
        if (!(p[i] >= dims[i].low && p[i] <= dims[i].high))
            throw std::invalid_argument(who + ": dim '" + dims[i].name + "' value " +
                                        std::to_string(p[i]) + " outside [" +
                                        std::to_string(dims[i].low) + ", " +
                                        std::to_string(dims[i].high) + "]");
}

nlohmann::json ParamSpace::to_json() const {
    nlohmann::json dims_doc = nlohmann::json::array();
    for (const Dim& d : dims)
        dims_doc.push_back({{"name", d.name}, {"low", d.low}, {"high", d.high}});
    return nlohmann::json{{"dims", std::move(dims_doc)}, {"reference", reference}};
}

ParamSpace ParamSpace::from_json(const nlohmann::json& doc) {
    ParamSpace space;
    try {
        for (const auto& dim_doc : doc.at("dims"))
            space.dims.push_back({dim_doc.at("name").get<std::string>(),
                                  dim_doc.at("low").get<double>(),
                                  dim_doc.at("high").get<double>()});
        space.reference = doc.at("reference").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("ParamSpace: malformed document: ") + e.what());
    }
    space.validate();
    return space;
}

ParamVector denormalize_params(const ParamSpace& space, std::span<const double> u) {
    if (u.size() != space.size())
        throw std::invalid_argument("denormalize_params: unit vector size mismatch");
    ParamVector out(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (!(u[i] >= 0.0 && u[i] <= 1.0))
            throw std::invalid_argument("denormalize_params: entry for dim '" +
                                        space.dims[i].name + "' outside [0,1]");
        if (u[i] == 0.0)
            out[i] = space.dims[i].low;
        else if (u[i] == 1.0)
            out[i] = space.dims[i].high;
        else
            out[i] = space.dims[i].low + u[i] * (space.dims[i].high - space.dims[i].low);
    }
    return out;
}

ParamVector normalize_params(const ParamSpace& space, std::span<const double> p) {
    space.check_inside(p, "normalize_params");
    ParamVector out(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        double width = space.dims[i].high - space.dims[i].low;
        out[i] = width > 0.0 ? (p[i] - space.dims[i].low) / width : 0.0;
    }
    return out;
}

} // namespace rrls
