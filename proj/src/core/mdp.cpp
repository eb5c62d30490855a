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

#include "core/mdp.hpp"

#include "core/errors.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nlohmann/json.hpp"

namespace rrls {

namespace {

constexpr double kRowSumTol = 1e-12;

void check_distribution(std::span<const double> row, const std::string& what) {
    double sum = 0.0;
    for (double p : row) {
        if (!(p >= 0.0)) throw std::invalid_argument(what + ": negative or NaN probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTol)
        throw std::invalid_argument(what + ": probabilities sum to " + std::to_string(sum));
}

} // namespace

FiniteMDP FiniteMDP::zeros(int n_states, int n_actions, double gamma) {
    FiniteMDP mdp;
    mdp.n_states = n_states;
    mdp.n_actions = n_actions;
    mdp.gamma = gamma;
    mdp.kernel.assign(static_cast<std::size_t>(n_states) * n_actions * n_states, 0.0);
    mdp.reward.assign(static_cast<std::size_t>(n_states) * n_actions, 0.0);
    mdp.rho.assign(static_cast<std::size_t>(n_states), 0.0);
    if (n_states > 0) mdp.rho[0] = 1.0;
    return mdp;
}

void FiniteMDP::validate() const {
    if (n_states <= 0 || n_actions <= 0)
        throw std::invalid_argument("FiniteMDP: n_states and n_actions must be positive");
    if (!(gamma >= 0.0 && gamma < 1.0))
        throw std::invalid_argument("FiniteMDP: gamma must lie in [0,1)");
    if (kernel.size() != static_cast<std::size_t>(n_states) * n_actions * n_states)
        throw std::invalid_argument("FiniteMDP: kernel size mismatch");
    if (reward.size() != static_cast<std::size_t>(n_states) * n_actions)
        throw std::invalid_argument("FiniteMDP: reward size mismatch");
    if (rho.size() != static_cast<std::size_t>(n_states))
        throw std::invalid_argument("FiniteMDP: rho size mismatch");
    for (double r : reward)
        if (!std::isfinite(r)) throw std::invalid_argument("FiniteMDP: non-finite reward");
    for (int s = 0; s < n_states; ++s)
        for (int a = 0; a < n_actions; ++a) {
            std::span<const double> row(&kernel[(static_cast<std::size_t>(s) * n_actions + a) *
                                                n_states],
                                        static_cast<std::size_t>(n_states));
            check_distribution(row, "FiniteMDP kernel row (s=" + std::to_string(s) +
                                        ", a=" + std::to_string(a) + ")");
        }
    check_distribution(rho, "FiniteMDP rho");
}

nlohmann::json FiniteMDP::to_json() const {
    nlohmann::json kernel_doc = nlohmann::json::array();
    for (int s = 0; s < n_states; ++s) {
        nlohmann::json per_action = nlohmann::json::array();
        for (int a = 0; a < n_actions; ++a) {
            nlohmann::json row = nlohmann::json::array();
            for (int s2 = 0; s2 < n_states; ++s2) row.push_back(p(s, a, s2));
            per_action.push_back(std::move(row));
        }
        kernel_doc.push_back(std::move(per_action));
    }
    nlohmann::json reward_doc = nlohmann::json::array();
    for (int s = 0; s < n_states; ++s) {
        nlohmann::json row = nlohmann::json::array();
        for (int a = 0; a < n_actions; ++a) row.push_back(r(s, a));
        reward_doc.push_back(std::move(row));
    }
    return nlohmann::json{{"n_states", n_states}, {"n_actions", n_actions},
                          {"gamma", gamma},       {"kernel", std::move(kernel_doc)},
                          {"reward", std::move(reward_doc)}, {"rho", rho}};
}

FiniteMDP FiniteMDP::from_json(const nlohmann::json& doc) {
    FiniteMDP mdp;
    try {
        mdp.n_states = doc.at("n_states").get<int>();
        mdp.n_actions = doc.at("n_actions").get<int>();
        mdp.gamma = doc.at("gamma").get<double>();
        const auto& kernel_doc = doc.at("kernel");
        const auto& reward_doc = doc.at("reward");
        mdp.kernel.reserve(static_cast<std::size_t>(mdp.n_states) * mdp.n_actions * mdp.n_states);
        for (const auto& per_action : kernel_doc)
            for (const auto& row : per_action)
                for (const auto& p : row) mdp.kernel.push_back(p.get<double>());
        mdp.reward.reserve(static_cast<std::size_t>(mdp.n_states) * mdp.n_actions);
        for (const auto& row : reward_doc)
            for (const auto& r : row) mdp.reward.push_back(r.get<double>());
        mdp.rho = doc.at("rho").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("FiniteMDP: malformed document: ") + e.what());
    }
    mdp.validate();
    return mdp;
}

Policy Policy::deterministic(const std::vector<int>& actions, int n_actions) {
    Policy pi;
    pi.n_states = static_cast<int>(actions.size());
    pi.n_actions = n_actions;
    pi.probs.assign(static_cast<std::size_t>(pi.n_states) * n_actions, 0.0);
    for (int s = 0; s < pi.n_states; ++s) {
        if (actions[s] < 0 || actions[s] >= n_actions)
            throw std::invalid_argument("Policy: action index out of range");
        pi.prob(s, actions[s]) = 1.0;
    }
    return pi;
}

Policy Policy::uniform(int n_states, int n_actions) {
    Policy pi;
    pi.n_states = n_states;
    pi.n_actions = n_actions;
    pi.probs.assign(static_cast<std::size_t>(n_states) * n_actions, 1.0 / n_actions);
    return pi;
}

int Policy::mode_action(int s) const {
    int best = 0;
    for (int a = 1; a < n_actions; ++a)
        if (prob(s, a) > prob(s, best)) best = a;
    return best;
}

void Policy::validate() const {
    if (n_states <= 0 || n_actions <= 0)
        throw std::invalid_argument("Policy: empty shape");
    if (probs.size() != static_cast<std::size_t>(n_states) * n_actions)
        throw std::invalid_argument("Policy: table size mismatch");
    for (int s = 0; s < n_states; ++s) {
        std::span<const double> row(&probs[static_cast<std::size_t>(s) * n_actions],
                                    static_cast<std::size_t>(n_actions));
        check_distribution(row, "Policy row (s=" + std::to_string(s) + ")");
    }
}

namespace {

void check_value_shape(const FiniteMDP& mdp, const ValueVector& v) {
    if (v.size() != static_cast<std::size_t>(mdp.n_states))
        throw std::invalid_argument("value vector has " + std::to_string(v.size()) +
                                    " entries, expected " + std::to_string(mdp.n_states));
}

void check_policy_shape(const FiniteMDP& mdp, const Policy& pi) {
    if (pi.n_states != mdp.n_states || pi.n_actions != mdp.n_actions)
        throw std::invalid_argument("policy shape does not match MDP");
}

double expected_next(const FiniteMDP& mdp, int s, int a, const ValueVector& v) {
    const double* row = &mdp.kernel[(static_cast<std::size_t>(s) * mdp.n_actions + a) *
                                    mdp.n_states];
    double acc = 0.0;
    for (int s2 = 0; s2 < mdp.n_states; ++s2) acc += row[s2] * v[s2];
    return acc;
}

} // namespace

ValueVector bellman_backup(const FiniteMDP& mdp, const ValueVector& v) {
    check_value_shape(mdp, v);
    ValueVector out(mdp.n_states);
    for (int s = 0; s < mdp.n_states; ++s) {
        double best = -std::numeric_limits<double>::infinity();
        for (int a = 0; a < mdp.n_actions; ++a) {
            double q = mdp.r(s, a) + mdp.gamma * expected_next(mdp, s, a, v);
            if (q > best) best = q;
        }
        out[s] = best;
    }
    return out;
}

ValueVector policy_backup(const FiniteMDP& mdp, const Policy& pi, const ValueVector& v) {
    check_value_shape(mdp, v);
    check_policy_shape(mdp, pi);
    ValueVector out(mdp.n_states);
    for (int s = 0; s < mdp.n_states; ++s) {
        double acc = 0.0;
        for (int a = 0; a < mdp.n_actions; ++a) {
            double w = pi.prob(s, a);
            if (w == 0.0) continue;
            acc += w * (mdp.r(s, a) + mdp.gamma * expected_next(mdp, s, a, v));
        }
        out[s] = acc;
    }
    return out;
}

SolveResult value_iteration(const FiniteMDP& mdp, double tol, int max_iters) {
    if (!(tol > 0.0)) throw std::invalid_argument("value_iteration: tol must be positive");
    ValueVector v(mdp.n_states, 0.0);
    double residual = std::numeric_limits<double>::infinity();
    for (int iter = 1; iter <= max_iters; ++iter) {
        ValueVector next = bellman_backup(mdp, v);
        residual = sup_norm_diff(next, v);
        v = std::move(next);
        if (residual <= tol) {
            // Contraction: || T v - v || <= gamma * residual <= tol.
            assert(sup_norm_diff(bellman_backup(mdp, v), v) <= tol);
            SolveResult result;
            result.policy = Policy::deterministic(greedy_actions(mdp, v), mdp.n_actions);
            result.values = std::move(v);
            result.iterations = iter;
            result.residual = residual;
            return result;
        }
    }
    throw BudgetExhausted("value_iteration: no convergence within " +
                              std::to_string(max_iters) + " iterations (residual " +
                              std::to_string(residual) + ")",
                          residual, max_iters);
}

ValueVector policy_evaluation(const FiniteMDP& mdp, const Policy& pi, double tol,
                              int max_iters) {
    if (!(tol > 0.0)) throw std::invalid_argument("policy_evaluation: tol must be positive");
    check_policy_shape(mdp, pi);
    pi.validate();
    // Stop once the residual guarantees sup-norm distance <= tol to the
    // fixed point: ||v_n - v*|| <= gamma/(1-gamma) * ||v_n - v_{n-1}||.
    double stop = mdp.gamma > 0.0 ? tol * (1.0 - mdp.gamma) / mdp.gamma
                                  : std::numeric_limits<double>::infinity();
    ValueVector v(mdp.n_states, 0.0);
    double residual = std::numeric_limits<double>::infinity();
    for (int iter = 1; iter <= max_iters; ++iter) {
        ValueVector next = policy_backup(mdp, pi, v);
        residual = sup_norm_diff(next, v);
        v = std::move(next);
        if (residual <= stop) return v;
    }
    throw BudgetExhausted("policy_evaluation: no convergence within " +
                              std::to_string(max_iters) + " iterations (residual " +
                              std::to_string(residual) + ")",
                          residual, max_iters);
}

QTable q_from_v(const FiniteMDP& mdp, const ValueVector& v) {
    check_value_shape(mdp, v);
    QTable q;
    q.n_states = mdp.n_states;
    q.n_actions = mdp.n_actions;
    q.values.resize(static_cast<std::size_t>(mdp.n_states) * mdp.n_actions);
    for (int s = 0; s < mdp.n_states; ++s)
        for (int a = 0; a < mdp.n_actions; ++a)
            q.q(s, a) = mdp.r(s, a) + mdp.gamma * expected_next(mdp, s, a, v);
    return q;
}

std::vector<int> greedy_actions(const FiniteMDP& mdp, const ValueVector& v) {
    check_value_shape(mdp, v);
    std::vector<int> actions(mdp.n_states, 0);
    for (int s = 0; s < mdp.n_states; ++s) {
        double best = -std::numeric_limits<double>::infinity();
        for (int a = 0; a < mdp.n_actions; ++a) {
            double q = mdp.r(s, a) + mdp.gamma * expected_next(mdp, s, a, v);
            if (q > best) {
                best = q;
                actions[s] = a;
            }
        }
    }
    return actions;
}

double weighted_value(std::span<const double> rho, const ValueVector& v) {
    if (rho.size() != v.size())
        throw std::invalid_argument("weighted_value: shape mismatch");
    double acc = 0.0;
    for (std::size_t s = 0; s < v.size(); ++s) acc += rho[s] * v[s];
    return acc;
}

double sup_norm_diff(const ValueVector& a, const ValueVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("sup_norm_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace rrls
