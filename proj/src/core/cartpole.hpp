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
#include <memory>

#include "core/env.hpp"

namespace rrls {

/// Physical parameters of the cart-pole. The pole is a uniform rod of
/// half-length `half_length` hinged on the cart; (force_x, force_y) is a
/// constant disturbance force at the pole tip.
struct CartPoleParams {
    double pole_mass = 4.90; // kg
    double cart_mass = 9.42; // kg
    double half_length = 0.5; // m, pivot to center of mass
    double friction = 0.0;    // viscous cart friction coefficient
    double force_x = 0.0;     // N, in [-3, 3]
    double force_y = 0.0;     // N, in [-3, 3]

    void validate() const;
};

/// (x, x_dot, theta, theta_dot); theta measured from upright, wrapped to
/// [-pi, pi].
struct CartPoleState {
    double x = 0.0;
    double x_dot = 0.0;
    double theta = 0.0;
    double theta_dot = 0.0;
};

inline constexpr double kCartPoleGravity = 9.81;
inline constexpr double kCartPoleForceLimit = 10.0;  // N
inline constexpr double kCartPoleThetaLimit = 0.2;   // rad
inline constexpr double kCartPoleXLimit = 2.4;       // m
inline constexpr double kCartPoleDisturbanceLimit = 3.0; // N

/// One RK4 step of the uniform-rod cart-pole dynamics. The horizontal
/// tip disturbance force_x adds to the cart force; the vertical force_y
/// enters the torque balance with lever arm half_length*sin(theta). Pure
/// and deterministic: equal inputs give bitwise-equal outputs. Throws
/// EnvFault on a non-finite input state and std::invalid_argument on an
/// out-of-range action or dt <= 0.
CartPoleState cartpole_step(const CartPoleState& state, double action,
                            const CartPoleParams& params, double dt = 0.02);

enum class CartPoleVariant {
    Masses, // set_params drives (pole_mass, cart_mass)
    Forces  // set_params drives (force_x, force_y)
};

struct CartPoleConfig {
    CartPoleVariant variant = CartPoleVariant::Masses;
    double dt = 0.02;
    int horizon = 1000;
    double reset_noise = 0.05; // uniform half-width on each state entry
    CartPoleParams params{};
};

/// Episodic cart-pole balance task: observation (x, theta, x_dot,
/// theta_dot), reward +1 per step alive, terminated when |theta| > 0.2 rad
/// or |x| > 2.4 m, truncated at the horizon.
std::unique_ptr<Env> make_cartpole_env(const CartPoleConfig& config);

/// Registry-style constructor for the two bundled variants.
std::unique_ptr<Env> cartpole_env(const std::string& space_selection);

} // namespace rrls
