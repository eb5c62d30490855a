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

#include "core/wrappers.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "core/rng.hpp"

namespace rrls {

namespace {

/// Common passthrough plumbing for wrappers that keep the inner
/// observation, parameter access and episode structure.
class PassthroughWrapper : public Env {
public:
    explicit PassthroughWrapper(std::unique_ptr<Env> inner) : inner_(std::move(inner)) {
        if (!inner_) throw std::invalid_argument("wrapper: null environment");
    }

    void set_params(std::span<const double> params) override { inner_->set_params(params); }
    ParamVector get_params() const override { return inner_->get_params(); }
    int observation_dim() const override { return inner_->observation_dim(); }
    int action_dim() const override { return inner_->action_dim(); }
    int param_dim() const override { return inner_->param_dim(); }
    ActionBounds action_bounds() const override { return inner_->action_bounds(); }

protected:
    std::unique_ptr<Env> inner_;
};

class DomainRandomizationWrapper final : public PassthroughWrapper {
public:
    DomainRandomizationWrapper(std::unique_ptr<Env> inner, ParamSpace space,
                               ParamSampler sampler, std::uint64_t seed)
        : PassthroughWrapper(std::move(inner)),
          space_(std::move(space)),
          sampler_(std::move(sampler)),
          engine_(make_engine(seed)) {
        space_.validate();
        if (static_cast<int>(space_.size()) != inner_->param_dim())
            throw std::invalid_argument(
                "DomainRandomization: space dims do not match env param count");
    }

    std::vector<double> reset(std::uint64_t seed) override {
        ParamVector params = sampler_ ? sampler_(engine_) : uniform_draw();
        space_.check_inside(params, "DomainRandomization sampler");
        inner_->set_params(params);
        return inner_->reset(seed);
    }

    StepResult step(std::span<const double> action) override { return inner_->step(action); }

private:
    ParamVector uniform_draw() {
        ParamVector params(space_.size());
        for (std::size_t i = 0; i < space_.size(); ++i) {
            const auto& d = space_.dims[i];
            params[i] = d.low == d.high
                            ? d.low
                            : std::uniform_real_distribution<double>(d.low, d.high)(engine_);
        }
        return params;
    }

    ParamSpace space_;
    ParamSampler sampler_;
    std::mt19937_64 engine_;
};

class AdversarialWrapper final : public PassthroughWrapper {
public:
    AdversarialWrapper(std::unique_ptr<Env> inner, ParamSpace space)
        : PassthroughWrapper(std::move(inner)), space_(std::move(space)) {
        space_.validate();
        if (static_cast<int>(space_.size()) != inner_->param_dim())
            throw std::invalid_argument("Adversarial: space dims do not match env param count");
    }

    std::vector<double> reset(std::uint64_t seed) override { return inner_->reset(seed); }

    StepResult step(std::span<const double> action) override {
        int inner_dim = inner_->action_dim();
        int d = static_cast<int>(space_.size());
        if (static_cast<int>(action.size()) != inner_dim + d)
            throw std::invalid_argument("Adversarial: joint action has " +
                                        std::to_string(action.size()) + " entries, expected " +
                                        std::to_string(inner_dim + d));
        ParamVector params(space_.size());
        for (int i = 0; i < d; ++i) {
            double u = action[inner_dim + i];
            if (!(u >= -1.0 && u <= 1.0))
                throw std::invalid_argument("Adversarial: adversary entry for dim '" +
                                            space_.dims[i].name + "' outside [-1,1]");
            const auto& dim = space_.dims[i];
            if (u == -1.0)
                params[i] = dim.low;
            else if (u == 1.0)
                params[i] = dim.high;
            else
                params[i] = dim.low + 0.5 * (u + 1.0) * (dim.high - dim.low);
        }
        inner_->set_params(params);
        return inner_->step(action.subspan(0, inner_dim));
    }

    int action_dim() const override {
        return inner_->action_dim() + static_cast<int>(space_.size());
    }

    ActionBounds action_bounds() const override {
        ActionBounds bounds = inner_->action_bounds();
        for (std::size_t i = 0; i < space_.size(); ++i) {
            bounds.low.push_back(-1.0);
            bounds.high.push_back(1.0);
        }
        return bounds;
    }

private:
    ParamSpace space_;
};

class ActionRobustWrapper final : public PassthroughWrapper {
public:
    ActionRobustWrapper(std::unique_ptr<Env> inner, double alpha)
        : PassthroughWrapper(std::move(inner)), alpha_(alpha) {
        if (!(alpha >= 0.0 && alpha <= 1.0))
            throw std::invalid_argument("ActionRobust: alpha must lie in [0,1]");
    }

    std::vector<double> reset(std::uint64_t seed) override { return inner_->reset(seed); }

    StepResult step(std::span<const double> action) override {
        int inner_dim = inner_->action_dim();
        if (static_cast<int>(action.size()) != 2 * inner_dim)
            throw std::invalid_argument("ActionRobust: joint action has " +
                                        std::to_string(action.size()) + " entries, expected " +
                                        std::to_string(2 * inner_dim));
        ActionBounds bounds = inner_->action_bounds();
        std::vector<double> applied(inner_dim);
        for (int i = 0; i < inner_dim; ++i) {
            double mixed = alpha_ * action[i] + (1.0 - alpha_) * action[inner_dim + i];
            applied[i] = std::clamp(mixed, bounds.low[i], bounds.high[i]);
        }
        return inner_->step(applied);
    }

    int action_dim() const override { return 2 * inner_->action_dim(); }

    ActionBounds action_bounds() const override {
        ActionBounds bounds = inner_->action_bounds();
        ActionBounds joint = bounds;
        joint.low.insert(joint.low.end(), bounds.low.begin(), bounds.low.end());
        joint.high.insert(joint.high.end(), bounds.high.begin(), bounds.high.end());
        return joint;
    }

private:
    double alpha_;
};

} // namespace

std::unique_ptr<Env> wrap_domain_randomization(std::unique_ptr<Env> inner, ParamSpace space,
                                               ParamSampler sampler, std::uint64_t seed) {
    return std::make_unique<DomainRandomizationWrapper>(std::move(inner), std::move(space),
                                                        std::move(sampler), seed);
}

std::unique_ptr<Env> wrap_adversarial(std::unique_ptr<Env> inner, ParamSpace space) {
    return std::make_unique<AdversarialWrapper>(std::move(inner), std::move(space));
}

std::unique_ptr<Env> wrap_action_robust(std::unique_ptr<Env> inner, double alpha) {
    return std::make_unique<ActionRobustWrapper>(std::move(inner), alpha);
}

} // namespace rrls
