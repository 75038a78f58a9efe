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

#include "scwmmse/rates.hpp"

#include <cassert>
#include <cmath>

namespace scwmmse {

double link_rate(const NetworkInstance& net, std::span<const double> p,
                 std::span<const double> q, int k) {
    assert(k >= 0 && k < net.num_known);
    const int kp = net.num_known;
    double denom = net.noise_power[k];
    for (int j = 0; j < kp; ++j)
        if (j != k) denom += net.gain(j, k) * p[j];
    for (int i = 0; i < net.num_latent; ++i) denom += net.gain(kp + i, k) * q[i];
    return std::log1p(net.gain(k, k) * p[k] / denom);
}

double weighted_sum_rate(const NetworkInstance& net, std::span<const double> p,
                         std::span<const double> q) {
    double sum = 0.0;
    for (int k = 0; k < net.num_known; ++k) sum += net.weights[k] * link_rate(net, p, q, k);
    return sum;
}

double mse_term(const NetworkInstance& net, const WmmseState& state, double eta_k, int k) {
    const double uk = state.u[k];
    double e = uk * net.amp(k, k) * state.v[k] - 1.0;
    e *= e;
    for (int j = 0; j < net.num_known; ++j) {
        if (j == k) continue;
        double cross = uk * net.amp(j, k) * state.v[j];
        e += cross * cross;
    }
    return e + eta_k * uk * uk;
}

double reformulated_objective(const NetworkInstance& net, const WmmseState& state,
                              std::span<const double> eta) {
    double obj = 0.0;
    for (int k = 0; k < net.num_known; ++k)
        obj += net.weights[k] * (state.w[k] * mse_term(net, state, eta[k], k) - std::log(state.w[k]));
    return obj;
}

}  // namespace scwmmse
