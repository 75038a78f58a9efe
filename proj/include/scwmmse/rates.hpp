// scwmmse-sim: power allocation in interference networks with latent interferers
// Copyright (C) 2026 the scwmmse-sim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <span>
#include <vector>

#include "scwmmse/netgen.hpp"

namespace scwmmse {

/// Transmit powers of the known links, watts. Feasible when
/// 0 <= p_k <= max_power[k].
using PowerVector = std::vector<double>;

/// Powers of the latent links, watts.
using LatentPowerVector = std::vector<double>;

/// One snapshot of the per-receiver interference-plus-noise denominators.
/// total[k] = sum_j gain(j,k) p_j + hidden[k];
/// hidden[k] = sum_i gain(i,k) q_i + sigma_k^2 over the latent set.
struct InterferenceObservation {
    std::vector<double> total;
    std::vector<double> hidden;
};

/// Block-coordinate state of the MSE reformulation: receiver scalar u,
/// weight w, transmit amplitude v (p_k = v_k^2).
struct WmmseState {
    std::vector<double> u;
    std::vector<double> w;
    std::vector<double> v;
    int iteration = 0;
};

/// Achievable rate of known link k in nats per symbol:
/// log(1 + g_kk p_k / (sum_{j != k} g_jk p_j + sum_i g_ik q_i + sigma_k^2)).
double link_rate(const NetworkInstance& net, std::span<const double> p,
                 std::span<const double> q, int k);

/// sum_k alpha_k * link_rate(k) over the known set.
double weighted_sum_rate(const NetworkInstance& net, std::span<const double> p,
                         std::span<const double> q);

/// Mean-square error of receiver k at the current (u, v) with hidden
/// interference-plus-noise eta_k:
/// e_k = (u_k h_kk v_k - 1)^2 + sum_{j != k} (u_k h_jk v_j)^2 + eta_k u_k^2.
double mse_term(const NetworkInstance& net, const WmmseState& state, double eta_k, int k);

/// Weighted sum-MSE objective sum_k alpha_k (w_k e_k - log w_k). Finite for
/// all w_k > 0; its block minimizers are the closed-form u/w/v updates.
double reformulated_objective(const NetworkInstance& net, const WmmseState& state,
                              std::span<const double> eta);

}  // namespace scwmmse
