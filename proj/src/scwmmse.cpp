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

#include "scwmmse/scwmmse.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace scwmmse {

double epsilon(const EpsilonSchedule& schedule, int t) {
    assert(t >= 0 && t <= schedule.t_max);
    double base = schedule.a * (1.0 - static_cast<double>(t) / schedule.t_max);
    return std::pow(base, schedule.b);
}

ScStreams make_sc_streams(int num_links, std::uint64_t branch_seed, std::uint64_t dirichlet_seed) {
    ScStreams streams;
    streams.branch.reserve(num_links);
    streams.dirichlet.reserve(num_links);
    for (int k = 0; k < num_links; ++k) {
        streams.branch.emplace_back(derive_seed(branch_seed, k));
        streams.dirichlet.emplace_back(derive_seed(dirichlet_seed, k));
    }
    return streams;
}

void sc_wmmse_sweep(const NetworkInstance& net, WmmseState& state,
                    const InterferenceObservation& obs, const ScEstimator& estimator, double eps_t,
                    ScStreams& streams, std::vector<long>* cf_counts, std::vector<int>* cf_links) {
    if (estimator.num_links != net.num_known)
        throw std::invalid_argument("sc_wmmse_sweep: estimator trained on a different link set");
    if (cf_links) cf_links->clear();

    std::vector<double> mu(net.num_known - 1);
    std::function<bool(int, double&)> counterfactual = [&](int k, double& denom) {
        // One Bernoulli(eps) draw per link per sweep, from the link's own
        // stream; a strict < keeps eps = 0 branch-free.
        double draw = streams.branch[k].uniform01();
        if (!(draw < eps_t)) return false;
        if (cf_counts) ++(*cf_counts)[k];
        int d = 0;
        for (int j = 0; j < net.num_known; ++j)
            if (j != k) mu[d++] = obs.total[j];
        double estimate = infer(estimator, k, mu, &streams.dirichlet[k]);
        // Estimate validity guard with factual fallback. The true denominator
        // satisfies I_k >= h_kk^2 v_k^2 + sigma_k^2 (own signal plus noise),
        // so anything at or below that floor is certainly an underestimate
        // and would drive |u h v| past 1, where the weight update blows up.
        // Also covers non-positive estimates (possible for the free variant).
        double floor = net.gain(k, k) * state.v[k] * state.v[k] + net.noise_power[k];
        if (!(estimate > floor)) return false;
        denom = estimate;
        if (cf_links) cf_links->push_back(k);
        return true;
    };

    SweepHooks hooks;
    hooks.counterfactual = &counterfactual;
    wmmse_sweep(net, state, obs, EtaMode::observed, hooks);
}

}  // namespace scwmmse
