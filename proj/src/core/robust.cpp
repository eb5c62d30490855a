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

#include "core/robust.hpp"

#include "core/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nlohmann/json.hpp"

namespace rrls {

KernelSet KernelSet::singleton(const FiniteMDP& mdp) {
    KernelSet ks;
    ks.base = mdp;
    ks.kernels.push_back(mdp.kernel);
    ks.rectangular = true;
    return ks;
}

FiniteMDP KernelSet::member(int k) const {
    if (k < 0 || k >= n_kernels())
        throw std::invalid_argument("KernelSet: kernel index out of range");
    FiniteMDP mdp = base;
    mdp.kernel = kernels[k];
    return mdp;
}

void KernelSet::validate() const {
    base.validate();
    if (kernels.empty()) throw std::invalid_argument("KernelSet: empty kernel list");
    for (int k = 0; k < n_kernels(); ++k) {
        FiniteMDP probe = base;
        probe.kernel = kernels[k];
        try {
            probe.validate();
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("KernelSet: kernel " + std::to_string(k) +
                                        " invalid: " + e.what());
        }
    }
}

nlohmann::json KernelSet::to_json() const {
    nlohmann::json doc = base.to_json();
    nlohmann::json kernels_doc = nlohmann::json::array();
    for (const auto& kernel : kernels) {
        nlohmann::json kernel_doc = nlohmann::json::array();
        for (int s = 0; s < base.n_states; ++s) {
            nlohmann::json per_action = nlohmann::json::array();
            for (int a = 0; a < base.n_actions; ++a) {
                nlohmann::json row = nlohmann::json::array();
                const double* r =
                    &kernel[(static_cast<std::size_t>(s) * base.n_actions + a) * base.n_states];
                for (int s2 = 0; s2 < base.n_states; ++s2) row.push_back(r[s2]);
                per_action.push_back(std::move(row));
            }
            kernel_doc.push_back(std::move(per_action));
        }
        kernels_doc.push_back(std::move(kernel_doc));
    }
    return nlohmann::json{{"base", std::move(doc)},
                          {"kernels", std::move(kernels_doc)},
                          {"rectangular", rectangular}};
}

KernelSet KernelSet::from_json(const nlohmann::json& doc) {
    KernelSet ks;
    try {
        ks.base = FiniteMDP::from_json(doc.at("base"));
        ks.rectangular = doc.at("rectangular").get<bool>();
        for (const auto& kernel_doc : doc.at("kernels")) {
            std::vector<double> kernel;
            kernel.reserve(static_cast<std::size_t>(ks.base.n_states) * ks.base.n_actions *
                           ks.base.n_states);
            for (const auto& per_action : kernel_doc)
                for (const auto& row : per_action)
                    for (const auto& p : row) kernel.push_back(p.get<double>());
            ks.kernels.push_back(std::move(kernel));
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("KernelSet: malformed document: ") + e.what());
    }
    ks.validate();
    return ks;
}

AdversaryPolicy AdversaryPolicy::constant(int kernel_index, int n_states, int n_actions) {
    AdversaryPolicy adv;
    adv.n_states = n_states;
    adv.n_actions = n_actions;
    adv.row_choice.assign(static_cast<std::size_t>(n_states) * n_actions, kernel_index);
    return adv;
}

namespace {

void check_shapes(const KernelSet& ks, const ValueVector& v) {
    if (ks.kernels.empty()) throw std::invalid_argument("KernelSet: empty kernel list");
    if (v.size() != static_cast<std::size_t>(ks.base.n_states))
        throw std::invalid_argument("value vector does not match KernelSet shape");
}

double row_expectation(const double* row, const ValueVector& v) {
    double acc = 0.0;
    for (std::size_t s2 = 0; s2 < v.size(); ++s2) acc += row[s2] * v[s2];
    return acc;
}

/// min over listed rows at (s,a) of the one-step lookahead; lowest kernel
/// index wins ties.
double pessimistic_q(const KernelSet& ks, int s, int a, const ValueVector& v, int* argmin) {
    double best = std::numeric_limits<double>::infinity();
    int best_k = 0;
    for (int k = 0; k < ks.n_kernels(); ++k) {
        double e = row_expectation(ks.row(k, s, a), v);
        if (e < best) {
            best = e;
            best_k = k;
        }
    }
    if (argmin) *argmin = best_k;
    return ks.base.r(s, a) + ks.base.gamma * best;
}

} // namespace

RobustBackupResult robust_bellman_backup(const KernelSet& ks, const ValueVector& v) {
    check_shapes(ks, v);
    const FiniteMDP& base = ks.base;
    RobustBackupResult result;
    result.values.resize(base.n_states);
    result.adversary = AdversaryPolicy::constant(0, base.n_states, base.n_actions);
    for (int s = 0; s < base.n_states; ++s) {
        double best = -std::numeric_limits<double>::infinity();
        for (int a = 0; a < base.n_actions; ++a) {
            int row_k = 0;
            double q = pessimistic_q(ks, s, a, v, &row_k);
            result.adversary.choice(s, a) = row_k;
            if (q > best) best = q;
        }
        result.values[s] = best;
    }
    return result;
}

RobustSolveResult robust_value_iteration(const KernelSet& ks, double tol, int max_iters) {
    if (!(tol > 0.0))
        throw std::invalid_argument("robust_value_iteration: tol must be positive");
    check_shapes(ks, ValueVector(ks.base.n_states, 0.0));
    ValueVector v(ks.base.n_states, 0.0);
    double residual = std::numeric_limits<double>::infinity();
    for (int iter = 1; iter <= max_iters; ++iter) {
        RobustBackupResult backed = robust_bellman_backup(ks, v);
        residual = sup_norm_diff(backed.values, v);
        v = std::move(backed.values);
        if (residual <= tol) {
            RobustSolveResult result;
            // Greedy agent actions against the pessimistic one-step
            // lookahead at the converged values.
            std::vector<int> actions(ks.base.n_states, 0);
            for (int s = 0; s < ks.base.n_states; ++s) {
                double best = -std::numeric_limits<double>::infinity();
                for (int a = 0; a < ks.base.n_actions; ++a) {
                    double q = pessimistic_q(ks, s, a, v, nullptr);
                    if (q > best) {
                        best = q;
                        actions[s] = a;
                    }
                }
            }
            result.adversary = robust_bellman_backup(ks, v).adversary;
            result.policy = Policy::deterministic(actions, ks.base.n_actions);
            result.values = std::move(v);
            result.iterations = iter;
            result.residual = residual;
            return result;
        }
    }
    throw BudgetExhausted("robust_value_iteration: no convergence within " +
                              std::to_string(max_iters) + " iterations (residual " +
                              std::to_string(residual) + ")",
                          residual, max_iters);
}

PessimisticResult pessimistic_policy_value(const KernelSet& ks, const Policy& pi, double tol,
                                           int max_iters) {
    if (ks.kernels.empty()) throw std::invalid_argument("KernelSet: empty kernel list");
    PessimisticResult result;
    result.values.assign(ks.base.n_states, std::numeric_limits<double>::infinity());
    result.kernel_index = 0;
    double best_weighted = std::numeric_limits<double>::infinity();
    // Per-kernel evaluations are independent; reduced sequentially in
    // index order so ties resolve to the lowest index.
    for (int k = 0; k < ks.n_kernels(); ++k) {
        ValueVector vk = policy_evaluation(ks.member(k), pi, tol, max_iters);
        double weighted = weighted_value(ks.base.rho, vk);
        if (weighted < best_weighted) {
            best_weighted = weighted;
            result.kernel_index = k;
        }
        for (int s = 0; s < ks.base.n_states; ++s)
            result.values[s] = std::min(result.values[s], vk[s]);
    }
    return result;
}

ValueVector robust_policy_evaluation(const KernelSet& ks, const Policy& pi, double tol,
                                     int max_iters) {
    if (!(tol > 0.0))
        throw std::invalid_argument("robust_policy_evaluation: tol must be positive");
    if (pi.n_states != ks.base.n_states || pi.n_actions != ks.base.n_actions)
        throw std::invalid_argument("policy shape does not match KernelSet");
    double gamma = ks.base.gamma;
    double stop = gamma > 0.0 ? tol * (1.0 - gamma) / gamma
                              : std::numeric_limits<double>::infinity();
    ValueVector v(ks.base.n_states, 0.0);
    double residual = std::numeric_limits<double>::infinity();
    for (int iter = 1; iter <= max_iters; ++iter) {
        ValueVector next(ks.base.n_states, 0.0);
        for (int s = 0; s < ks.base.n_states; ++s) {
            double acc = 0.0;
            for (int a = 0; a < ks.base.n_actions; ++a) {
                double w = pi.prob(s, a);
                if (w == 0.0) continue;
                acc += w * pessimistic_q(ks, s, a, v, nullptr);
            }
            next[s] = acc;
        }
        residual = sup_norm_diff(next, v);
        v = std::move(next);
        if (residual <= stop) return v;
    }
    throw BudgetExhausted("robust_policy_evaluation: no convergence within " +
                              std::to_string(max_iters) + " iterations (residual " +
                              std::to_string(residual) + ")",
                          residual, max_iters);
}

ValueVector game_operator_backup(const KernelSet& ks, const Policy& pi,
                                 const AdversaryPolicy& adv, const ValueVector& v) {
    check_shapes(ks, v);
    if (pi.n_states != ks.base.n_states || pi.n_actions != ks.base.n_actions)
        throw std::invalid_argument("policy shape does not match KernelSet");
    if (adv.n_states != ks.base.n_states || adv.n_actions != ks.base.n_actions)
        throw std::invalid_argument("adversary shape does not match KernelSet");
    ValueVector out(ks.base.n_states);
    for (int s = 0; s < ks.base.n_states; ++s) {
        double acc = 0.0;
        for (int a = 0; a < ks.base.n_actions; ++a) {
            double w = pi.prob(s, a);
            if (w == 0.0) continue;
            int k = adv.choice(s, a);
            if (k < 0 || k >= ks.n_kernels())
                throw std::invalid_argument("AdversaryPolicy: kernel index out of range");
            acc += w * (ks.base.r(s, a) + ks.base.gamma * row_expectation(ks.row(k, s, a), v));
        }
        out[s] = acc;
    }
    return out;
}

RobustSolveResult dynamic_adversary_vi(const KernelSet& ks, double tol, int max_iters) {
    // Per-(s,a) row choice after observing the action is exactly the
    // rectangular-hull robust operator.
    return robust_value_iteration(ks, tol, max_iters);
}

namespace {

double static_pessimistic_scalar(const KernelSet& ks, const Policy& pi, double tol) {
    if (ks.rectangular)
        return weighted_value(ks.base.rho, robust_policy_evaluation(ks, pi, tol));
    return weighted_value(ks.base.rho, pessimistic_policy_value(ks, pi, tol).values);
}

} // namespace

double static_dynamic_gap(const KernelSet& ks, double tol, long long enumeration_cap) {
    ks.validate();
    double policies = std::pow(static_cast<double>(ks.base.n_actions),
                               static_cast<double>(ks.base.n_states));
    if (policies > static_cast<double>(enumeration_cap))
        throw std::invalid_argument(
            "static_dynamic_gap: " + std::to_string(policies) +
            " deterministic policies exceed the enumeration cap of " +
            std::to_string(enumeration_cap));

    // Inner evaluations one decade tighter than the requested gap
    // tolerance, so solver error cannot masquerade as a gap.
    double eval_tol = tol * 0.1;

    long long count = static_cast<long long>(policies);
    std::vector<int> actions(ks.base.n_states, 0);
    double v_static = -std::numeric_limits<double>::infinity();
    for (long long code = 0; code < count; ++code) {
        long long rest = code;
        for (int s = 0; s < ks.base.n_states; ++s) {
            actions[s] = static_cast<int>(rest % ks.base.n_actions);
            rest /= ks.base.n_actions;
        }
        Policy pi = Policy::deterministic(actions, ks.base.n_actions);
        v_static = std::max(v_static, static_pessimistic_scalar(ks, pi, eval_tol));
    }

    RobustSolveResult dynamic = dynamic_adversary_vi(ks, eval_tol);
    double v_dynamic_policy = static_pessimistic_scalar(ks, dynamic.policy, eval_tol);
    return v_static - v_dynamic_policy;
}

} // namespace rrls
