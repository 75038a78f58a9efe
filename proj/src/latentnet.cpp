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

#include "scwmmse/latentnet.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace scwmmse {

LatentPolicy make_latent_policy(int num_latent, int num_known, double q_max_w,
                                double jitter_halfwidth, Rng& rng) {
    LatentPolicy policy;
    policy.num_latent = num_latent;
    policy.num_known = num_known;
    policy.q_max_w = q_max_w;
    policy.jitter_halfwidth = jitter_halfwidth;
    policy.mixing.resize(static_cast<size_t>(num_latent) * num_known);
    for (double& z : policy.mixing) z = rng.uniform(-1.0, 1.0);
    return policy;
}

LatentPowerVector step_policy(const LatentPolicy& policy, std::span<const double> p,
                              std::span<const double> jitter) {
    assert(static_cast<int>(p.size()) == policy.num_known);
    assert(static_cast<int>(jitter.size()) == policy.num_latent);
    LatentPowerVector q(policy.num_latent);
    for (int i = 0; i < policy.num_latent; ++i) {
        double mixed = 0.0;
        for (int j = 0; j < policy.num_known; ++j) mixed += policy.z(i, j) * p[j];
        q[i] = std::clamp(mixed * (1.0 + jitter[i]), 0.0, policy.q_max_w);
    }
    return q;
}

LatentPowerVector step_policy(const LatentPolicy& policy, std::span<const double> p, Rng& rng) {
    std::vector<double> jitter(policy.num_latent);
    for (double& x : jitter)
        x = policy.jitter_halfwidth > 0.0
                ? rng.uniform(-policy.jitter_halfwidth, policy.jitter_halfwidth)
                : 0.0;
    return step_policy(policy, p, jitter);
}

LatentPolicy truncate_policy(const LatentPolicy& policy, int num_latent) {
    assert(num_latent >= 0 && num_latent <= policy.num_latent);
    LatentPolicy out = policy;
    out.num_latent = num_latent;
    out.mixing.resize(static_cast<size_t>(num_latent) * policy.num_known);
    return out;
}

InterferenceObservation observe_interference(const NetworkInstance& net, std::span<const double> p,
                                             std::span<const double> q) {
    assert(static_cast<int>(p.size()) == net.num_known);
    assert(static_cast<int>(q.size()) == net.num_latent);
    const int kp = net.num_known;
    InterferenceObservation obs;
    obs.total.resize(kp);
    obs.hidden.resize(kp);
    for (int k = 0; k < kp; ++k) {
        double hidden = net.noise_power[k];
        for (int i = 0; i < net.num_latent; ++i) hidden += net.gain(kp + i, k) * q[i];
        double known = 0.0;
        for (int j = 0; j < kp; ++j) known += net.gain(j, k) * p[j];
        obs.hidden[k] = hidden;
        obs.total[k] = known + hidden;
    }
    return obs;
}

std::string policy_csv(const LatentPolicy& policy) {
    std::ostringstream out;
    for (int i = 0; i < policy.num_latent; ++i) {
        for (int j = 0; j < policy.num_known; ++j) {
            if (j) out << ',';
            out << format_double(policy.z(i, j));
        }
        out << '\n';
    }
    return out.str();
}

LatentPolicy policy_from_csv(const std::string& csv, double q_max_w, double jitter_halfwidth) {
    LatentPolicy policy;
    policy.q_max_w = q_max_w;
    policy.jitter_halfwidth = jitter_halfwidth;
    std::istringstream in(csv);
    std::string line;
    int cols = -1;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        int count = 0;
        while (std::getline(row, cell, ',')) {
            policy.mixing.push_back(std::stod(cell));
            ++count;
        }
        if (cols < 0) cols = count;
        if (count != cols) throw std::invalid_argument("policy_from_csv: ragged rows");
        ++policy.num_latent;
    }
    policy.num_known = cols < 0 ? 0 : cols;
    return policy;
}

}  // namespace scwmmse
