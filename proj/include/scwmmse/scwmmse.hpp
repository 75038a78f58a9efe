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

#include <vector>

#include "scwmmse/synthctl.hpp"
#include "scwmmse/wmmse.hpp"

namespace scwmmse {

/// Decaying probability of taking the counterfactual branch:
/// epsilon(t) = [a (1 - t/t_max)]^b.
struct EpsilonSchedule {
    double a = 0.2;
    double b = 2.0;
    int t_max = 1;
};

/// Schedule value at sweep t; requires 0 <= t <= t_max.
double epsilon(const EpsilonSchedule& schedule, int t);

/// Per-link RNG streams of the counterfactual machinery. The branch
/// streams are split per link and separate from every other stream in a
/// run, so a schedule that is identically zero leaves the trajectory
/// bitwise equal to plain WMMSE.
struct ScStreams {
    std::vector<Rng> branch;     ///< one Bernoulli draw per link per sweep
    std::vector<Rng> dirichlet;  ///< per-use coefficient draws (dirich variant)
};

ScStreams make_sc_streams(int num_links, std::uint64_t branch_seed, std::uint64_t dirichlet_seed);

/// One SC-WMMSE sweep: per link, with probability eps_t the u denominator is
/// replaced by the trained estimate nu_k . mu_k formed from the sweep-top
/// observed totals of the other links; otherwise the update is the plain
/// factual one. An estimate at or below the link's certain denominator
/// floor h_kk^2 v_k^2 + sigma_k^2 (which covers non-positive free-variant
/// estimates) falls back to the factual update. w and v updates are
/// identical to plain WMMSE. cf_counts (per link, optional) accumulates
/// epsilon draws that selected the branch; cf_links (optional) receives the
/// links whose u-update actually used the estimate this sweep.
void sc_wmmse_sweep(const NetworkInstance& net, WmmseState& state,
                    const InterferenceObservation& obs, const ScEstimator& estimator, double eps_t,
                    ScStreams& streams, std::vector<long>* cf_counts = nullptr,
                    std::vector<int>* cf_links = nullptr);

}  // namespace scwmmse
