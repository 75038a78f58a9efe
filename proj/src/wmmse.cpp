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

#include "scwmmse/wmmse.hpp"

#include <cassert>
#include <cmath>

namespace scwmmse {

std::vector<double> draw_initial_amplitudes(const NetworkInstance& net, Rng& rng) {
    std::vector<double> v(net.num_known);
    for (int k = 0; k < net.num_known; ++k)
        v[k] = std::sqrt(net.max_power[k]) * (1.0 - rng.uniform01());
    return v;
}

WmmseState init_state(const NetworkInstance& net, std::vector<double> v,
                      const InterferenceObservation& obs, EtaMode mode) {
    WmmseState state;
    state.v = std::move(v);
    state.u.assign(net.num_known, 0.0);
    state.w.assign(net.num_known, 1.0);
    for (int k = 0; k < net.num_known; ++k) {
        state.u[k] = update_u(net, state.v, eta_for(net, obs, mode, k), k);
        state.w[k] = update_w(state.u[k], net.amp(k, k), state.v[k]);
    }
    state.iteration = 0;
    return state;
}

double update_u(const NetworkInstance& net, std::span<const double> v, double eta_k, int k) {
    double denom = eta_k;
    for (int j = 0; j < net.num_known; ++j) denom += net.gain(j, k) * v[j] * v[j];
    assert(denom > 0.0);
    return net.amp(k, k) * v[k] / denom;
}

double update_w(double u_k, double amp_kk, double v_k) {
    double t = std::fabs(u_k * amp_kk * v_k);
    if (t > 1.0 - 1e-12) t = 1.0 - 1e-12;
    return 1.0 / (1.0 - t);
}

double update_v(const NetworkInstance& net, const WmmseState& state, int k, double* lambda_out) {
    const double numer = net.weights[k] * net.amp(k, k) * state.u[k] * state.w[k];
    double base = 0.0;  // quadratic coefficient at lambda = 0
    for (int j = 0; j < net.num_known; ++j)
        base += net.weights[j] * state.w[j] * net.gain(k, j) * state.u[j] * state.u[j];

    if (lambda_out) *lambda_out = 0.0;
    if (numer == 0.0) return 0.0;

    const double p_max = net.max_power[k];
    const double v_cap = std::sqrt(p_max);
    if (base > 0.0) {
        double v_unc = numer / base;
        if (v_unc * v_unc <= p_max) return v_unc;
    }

    // The cap is active: v(lambda) = numer / (base + lambda) decreases
    // monotonically in lambda, so bracket then bisect. Convergence is
    // accepted from the feasible side only (p_max - v^2 in [0, 1e-10 p_max])
    // so the power constraint is never violated.
    auto v_of = [&](double lambda) { return numer / (base + lambda); };
    double hi = 1.0;
    while (v_of(hi) > v_cap) hi *= 2.0;
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double v_mid = v_of(mid);
        if (v_mid <= v_cap && p_max - v_mid * v_mid <= 1e-10 * p_max) {
            if (lambda_out) *lambda_out = mid;
            return v_mid;
        }
        if (v_mid > v_cap)
            lo = mid;
        else
            hi = mid;
    }
    if (lambda_out) *lambda_out = hi;
    return v_of(hi);  // feasible side of the last bracket
}

void wmmse_sweep(const NetworkInstance& net, WmmseState& state, const InterferenceObservation& obs,
                 EtaMode mode, const SweepHooks& hooks) {
    for (int k = 0; k < net.num_known; ++k) {
        double denom = 0.0;
        if (hooks.counterfactual && (*hooks.counterfactual)(k, denom)) {
            state.u[k] = net.amp(k, k) * state.v[k] / denom;
        } else {
            state.u[k] = update_u(net, state.v, eta_for(net, obs, mode, k), k);
        }
        if (hooks.after_block) (*hooks.after_block)(k, 'u');

        state.w[k] = update_w(state.u[k], net.amp(k, k), state.v[k]);
        if (hooks.after_block) (*hooks.after_block)(k, 'w');

        state.v[k] = update_v(net, state, k);
        if (hooks.after_block) (*hooks.after_block)(k, 'v');
    }
    ++state.iteration;
}

bool sum_rate_converged(std::span<const double> history, int window, double rtol) {
    if (static_cast<int>(history.size()) < window + 1) return false;
    const double ref = std::fabs(history.back()) + 1e-300;
    for (size_t i = history.size() - window; i < history.size(); ++i)
        if (std::fabs(history[i] - history[i - 1]) > rtol * ref) return false;
    return true;
}

}  // namespace scwmmse
