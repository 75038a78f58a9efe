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
#include <string>
#include <vector>

#include "scwmmse/common.hpp"
#include "scwmmse/rates.hpp"

namespace scwmmse {

/// Power policy of the latent sub-network: q = clamp(Zp * (1 + xi), 0, q_max)
/// with Z fixed at construction (entries uniform on (-1, 1)) and xi a
/// per-entry multiplicative jitter uniform on (-jitter_halfwidth, +...).
/// jitter_halfwidth = 0 makes one step a pure function of p.
struct LatentPolicy {
    int num_latent = 0;
    int num_known = 0;
    std::vector<double> mixing;  ///< row-major num_latent x num_known
    double q_max_w = 0.2;
    double jitter_halfwidth = 0.1;

    double z(int i, int j) const { return mixing[static_cast<size_t>(i) * num_known + j]; }
};

/// Draws Z ~ U(-1,1) elementwise.
LatentPolicy make_latent_policy(int num_latent, int num_known, double q_max_w,
                                double jitter_halfwidth, Rng& rng);

/// One policy step with caller-supplied jitter values (len num_latent),
/// for shared-realization execution of several algorithms.
LatentPowerVector step_policy(const LatentPolicy& policy, std::span<const double> p,
                              std::span<const double> jitter);

/// One policy step drawing jitter from rng.
LatentPowerVector step_policy(const LatentPolicy& policy, std::span<const double> p, Rng& rng);

/// Policy restricted to the first num_latent links (the active subset of a
/// stage); rows beyond the cut are dropped.
LatentPolicy truncate_policy(const LatentPolicy& policy, int num_latent);

/// Interference observation under powers (p, q). q must cover all
/// net.num_latent links (inactive ones as zero).
InterferenceObservation observe_interference(const NetworkInstance& net, std::span<const double> p,
                                             std::span<const double> q);

/// Z matrix as CSV (one row per latent link) and back, for run reproducibility.
std::string policy_csv(const LatentPolicy& policy);
LatentPolicy policy_from_csv(const std::string& csv, double q_max_w, double jitter_halfwidth);

}  // namespace scwmmse
