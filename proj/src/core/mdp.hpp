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

#include <span>
#include <string>
#include <vector>

#include "nlohmann/json_fwd.hpp"

namespace rrls {

using ValueVector = std::vector<double>;

/// Finite discounted MDP with dense transition kernel p(s'|s,a) stored
/// row-major as [s][a][s'], per-(s,a) rewards, discount gamma in [0,1)
/// and an initial state distribution rho.
///
/// All solver functions in this module are pure: inputs are never
/// mutated, and concurrent calls on shared instances are safe.
struct FiniteMDP {
    int n_states = 0;
    int n_actions = 0;
    std::vector<double> kernel; // [s][a][s'], each (s,a) row sums to 1
    std::vector<double> reward; // [s][a]
    double gamma = 0.0;
    std::vector<double> rho; // initial distribution over states

    double p(int s, int a, int s2) const {
        return kernel[(static_cast<std::size_t>(s) * n_actions + a) * n_states + s2];
    }
    double& p(int s, int a, int s2) {
        return kernel[(static_cast<std::size_t>(s) * n_actions + a) * n_states + s2];
    }
    double r(int s, int a) const { return reward[static_cast<std::size_t>(s) * n_actions + a]; }
    double& r(int s, int a) { return reward[static_cast<std::size_t>(s) * n_actions + a]; }

    /// Zero-initialized MDP of the given shape (kernel rows must still be
    /// filled in before validate() passes).
    static FiniteMDP zeros(int n_states, int n_actions, double gamma);

    /// Throws std::invalid_argument when any structural invariant fails:
    /// row stochasticity within 1e-12, rho a distribution, gamma in [0,1).
    void validate() const;

    nlohmann::json to_json() const;
    static FiniteMDP from_json(const nlohmann::json& doc);
};

/// Stationary stochastic policy: row-stochastic table over actions.
struct Policy {
    int n_states = 0;
    int n_actions = 0;
    std::vector<double> probs; // [s][a]

    double prob(int s, int a) const { return probs[static_cast<std::size_t>(s) * n_actions + a]; }
    double& prob(int s, int a) { return probs[static_cast<std::size_t>(s) * n_actions + a]; }

    static Policy deterministic(const std::vector<int>& actions, int n_actions);
    static Policy uniform(int n_states, int n_actions);

    /// For (near-)deterministic rows: the highest-probability action,
    /// lowest index on ties.
    int mode_action(int s) const;

    void validate() const;
};

struct QTable {
    int n_states = 0;
    int n_actions = 0;
    std::vector<double> values; // [s][a]

    double q(int s, int a) const { return values[static_cast<std::size_t>(s) * n_actions + a]; }
    double& q(int s, int a) { return values[static_cast<std::size_t>(s) * n_actions + a]; }
};

struct SolveResult {
    ValueVector values;
    Policy policy; // greedy, deterministic (argmax, ties to lowest index)
    int iterations = 0;
    double residual = 0.0; // last sup-norm Bellman residual
};

/// One application of the optimal Bellman operator:
/// (T*v)(s) = max_a [ r(s,a) + gamma * sum_s' p(s'|s,a) v(s') ].
ValueVector bellman_backup(const FiniteMDP& mdp, const ValueVector& v);

/// One application of the policy Bellman operator T^pi.
ValueVector policy_backup(const FiniteMDP& mdp, const Policy& pi, const ValueVector& v);

/// Iterates T* from zero until the sup-norm residual is <= tol.
/// Throws BudgetExhausted (with the last residual) past max_iters.
SolveResult value_iteration(const FiniteMDP& mdp, double tol = 1e-8, int max_iters = 100000);

/// Fixed point of T^pi, accurate to within tol of the true value in
/// sup-norm (the stop rule converts the residual bound through gamma).
ValueVector policy_evaluation(const FiniteMDP& mdp, const Policy& pi, double tol = 1e-8,
                              int max_iters = 100000);

/// Q(s,a) = r(s,a) + gamma * sum_s' p(s'|s,a) v(s').
QTable q_from_v(const FiniteMDP& mdp, const ValueVector& v);

/// Greedy deterministic action per state for the given value function
/// (argmax of q_from_v, ties to lowest action index).
std::vector<int> greedy_actions(const FiniteMDP& mdp, const ValueVector& v);

/// rho-weighted scalar value sum_s rho(s) v(s).
double weighted_value(std::span<const double> rho, const ValueVector& v);

double sup_norm_diff(const ValueVector& a, const ValueVector& b);

} // namespace rrls
