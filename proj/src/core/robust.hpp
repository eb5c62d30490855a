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

#include "core/mdp.hpp"

namespace rrls {

/// Finite family of transition kernels over a shared base MDP. The base
/// supplies shapes, rewards, discount and the initial distribution; the
/// kernels are the adversary's choice set.
///
/// When `rectangular` is true the set is read as the (s,a)-rectangular
/// hull of the listed kernels: the adversary may recombine next-state
/// rows freely across members, per state-action pair. When false the
/// listed kernels are the whole choice set for a static adversary;
/// dynamic (per-step) operators always work on the hull.
struct KernelSet {
    FiniteMDP base;
    std::vector<std::vector<double>> kernels; // each [s][a][s'] like FiniteMDP::kernel
    bool rectangular = true;

    int n_kernels() const { return static_cast<int>(kernels.size()); }
    double p(int k, int s, int a, int s2) const {
        return kernels[k][(static_cast<std::size_t>(s) * base.n_actions + a) * base.n_states +
                          s2];
    }
    const double* row(int k, int s, int a) const {
        return &kernels[k][(static_cast<std::size_t>(s) * base.n_actions + a) * base.n_states];
    }

    /// Singleton set wrapping the base MDP's own kernel.
    static KernelSet singleton(const FiniteMDP& mdp);

    /// The base MDP with its kernel replaced by member k.
    FiniteMDP member(int k) const;

    void validate() const;

    nlohmann::json to_json() const;
    static KernelSet from_json(const nlohmann::json& doc);
};

/// Adversary decision table: for every (state, action), the index of the
/// kernel whose next-state row the adversary plays. A static whole-kernel
/// choice is the constant table.
struct AdversaryPolicy {
    int n_states = 0;
    int n_actions = 0;
    std::vector<int> row_choice; // [s][a] -> kernel index

    int choice(int s, int a) const {
        return row_choice[static_cast<std::size_t>(s) * n_actions + a];
    }
    int& choice(int s, int a) {
        return row_choice[static_cast<std::size_t>(s) * n_actions + a];
    }

    static AdversaryPolicy constant(int kernel_index, int n_states, int n_actions);
};

struct RobustBackupResult {
    ValueVector values;
    AdversaryPolicy adversary; // per-(s,a) minimizing row, lowest index on ties
};

/// Robust Bellman backup
/// (T*_P v)(s) = max_a min_k [ r(s,a) + gamma * sum_s' p_k(s'|s,a) v(s') ],
/// the inner min running over all listed rows at (s,a).
RobustBackupResult robust_bellman_backup(const KernelSet& ks, const ValueVector& v);

struct RobustSolveResult {
    ValueVector values;
    Policy policy;             // greedy agent policy, ties to lowest action index
    AdversaryPolicy adversary; // minimizing rows at the returned values
    int iterations = 0;
    double residual = 0.0;
};

/// Iterates the robust Bellman operator until the sup-norm residual is
/// <= tol. Throws BudgetExhausted past max_iters.
RobustSolveResult robust_value_iteration(const KernelSet& ks, double tol = 1e-8,
                                         int max_iters = 100000);

struct PessimisticResult {
    ValueVector values; // per-state min over whole listed kernels
    int kernel_index;   // member minimizing the rho-weighted value, lowest on ties
};

/// Static pessimistic evaluation of a policy: v^pi under every whole
/// listed kernel, reduced to the per-state minimum.
PessimisticResult pessimistic_policy_value(const KernelSet& ks, const Policy& pi,
                                           double tol = 1e-8, int max_iters = 100000);

/// Pessimistic evaluation of a fixed policy against the rectangular hull:
/// fixed point of v -> E_pi[ r + gamma * min over rows E v ].
ValueVector robust_policy_evaluation(const KernelSet& ks, const Policy& pi, double tol = 1e-8,
                                     int max_iters = 100000);

/// Two-player game backup for fixed agent and adversary policies:
/// (T^{pi,adv} v)(s) = E_{a~pi(s)} [ r(s,a) + gamma * E_{s'~row adv(s,a)} v(s') ].
ValueVector game_operator_backup(const KernelSet& ks, const Policy& pi,
                                 const AdversaryPolicy& adv, const ValueVector& v);

/// Fixed point of the max-min game operator, where the adversary picks a
/// next-state row per (s,a) after seeing the agent's action. Coincides
/// with robust_value_iteration under rectangular-hull semantics; exposed
/// separately so static/dynamic comparisons read explicitly.
RobustSolveResult dynamic_adversary_vi(const KernelSet& ks, double tol = 1e-8,
                                       int max_iters = 100000);

/// Diagnostic for the static-vs-dynamic gap. Enumerates all deterministic
/// stationary policies (refusing above enumeration_cap), scores each by
/// its rho-weighted static pessimistic value (hull semantics when
/// ks.rectangular, whole-kernel semantics otherwise), and subtracts the
/// same static score of the dynamic solution's greedy policy. The result
/// is >= -tol always and 0 within tolerance for rectangular sets.
double static_dynamic_gap(const KernelSet& ks, double tol = 1e-6,
                          long long enumeration_cap = 1000000);

} // namespace rrls
