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

#include <functional>
#include <span>
#include <vector>

#include "scwmmse/rates.hpp"

namespace scwmmse {

/// What the u-update uses as the hidden interference-plus-noise term:
/// the observed eta_k, or just sigma_k^2 (the "local" ablation, which
/// ignores the latent sub-network entirely).
enum class EtaMode { observed, local_only };

inline double eta_for(const NetworkInstance& net, const InterferenceObservation& obs, EtaMode mode,
                      int k) {
    return mode == EtaMode::observed ? obs.hidden[k] : net.noise_power[k];
}

/// v_k ~ uniform on (0, sqrt(p_max_k)].
std::vector<double> draw_initial_amplitudes(const NetworkInstance& net, Rng& rng);

/// Builds the iteration-0 state from drawn amplitudes: one u/w update pass
/// against the initial observation (which must have been taken under v).
WmmseState init_state(const NetworkInstance& net, std::vector<double> v,
                      const InterferenceObservation& obs, EtaMode mode);

/// Receiver update, the exact minimizer of e_k over u_k at the current v:
/// u_k = h_kk v_k / (sum_j gain(j,k) v_j^2 + eta_k). Requires a positive
/// denominator (eta_k >= sigma_k^2 > 0 in every caller).
double update_u(const NetworkInstance& net, std::span<const double> v, double eta_k, int k);

/// Weight update w_k = 1 / (1 - |u_k h_kk v_k|), with the product clamped
/// at 1 - 1e-12 so mid-iteration overshoot cannot produce an infinity.
double update_w(double u_k, double amp_kk, double v_k);

/// Transmit-amplitude update
/// v_k = alpha_k h_kk u_k w_k / (sum_j alpha_j w_j gain(k,j) u_j^2 + lambda),
/// with lambda = 0 when the unconstrained solution is feasible and otherwise
/// chosen by bisection so that v_k^2 = p_max_k within 1e-10 relative.
/// If lambda_out is non-null it receives the multiplier.
double update_v(const NetworkInstance& net, const WmmseState& state, int k,
                double* lambda_out = nullptr);

/// Optional instrumentation and extension points for one sweep.
struct SweepHooks {
    /// Called per link before the u-update; returning true replaces the
    /// whole u denominator with *denom (the counterfactual branch).
    const std::function<bool(int k, double& denom)>* counterfactual = nullptr;
    /// Called after each block update with the link index and 'u'/'w'/'v'.
    const std::function<void(int k, char block)>* after_block = nullptr;
};

/// One Gauss-Seidel sweep k = 0..K-1 of (u, w, v) updates. eta values come
/// from the observation taken at the top of the sweep; u and v denominators
/// use the in-sweep (freshly updated) state. Increments state.iteration.
void wmmse_sweep(const NetworkInstance& net, WmmseState& state, const InterferenceObservation& obs,
                 EtaMode mode, const SweepHooks& hooks = {});

/// Convergence test on a sum-rate history: relative change below rtol over
/// `window` consecutive sweeps.
bool sum_rate_converged(std::span<const double> history, int window = 5, double rtol = 1e-8);

}  // namespace scwmmse
