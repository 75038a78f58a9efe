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

#include <cstdint>
#include <string>
#include <vector>

namespace scwmmse {

/// Dual-slope log-distance path loss with lognormal shadowing and an
/// optional LOS/blockage mixture.
///
/// The numeric defaults are implementer-supplied approximations of an
/// indoor shopping-mall NLOS dual-slope model at 60 GHz; the source
/// material for that model family does not pin exact coefficients, so
/// every value here is overridable through the config file. The 68 dB
/// intercept is the free-space loss at 1 m for a 60 GHz carrier.
struct PathLossParams {
    double frequency_ghz = 60.0;
    double slope1_exponent = 2.9;        ///< below the breakpoint
    double slope2_exponent = 3.1;        ///< above the breakpoint
    double breakpoint_distance_m = 40.0;
    double intercept_db = 68.0;          ///< loss at 1 m
    double shadow_sigma_db = 4.0;        ///< lognormal shadowing std dev
    double los_exponent = 1.8;           ///< single-slope exponent when a draw is LOS
    double los_decay_distance_m = 15.0;  ///< P(LOS at d) = exp(-d / decay); <= 0 disables
    double blockage_prob = 0.1;          ///< extra-loss Bernoulli probability
    double blockage_loss_db = 15.0;

    /// All random components (shadowing, LOS draw, blockage) switched off.
    static PathLossParams deterministic() {
        PathLossParams p;
        p.shadow_sigma_db = 0.0;
        p.los_decay_distance_m = 0.0;
        p.blockage_prob = 0.0;
        return p;
    }
};

/// Every tunable of the simulator. Loaded from a JSON document with
/// nested sections (see configs/default.json); unknown keys are rejected
/// on load so typos cannot silently fall back to defaults.
struct SimConfig {
    // network
    int k_plus = 20;
    int k_minus = 20;
    double deployment_radius_m = 200.0;
    double rx_radius_m = 25.0;
    double max_power_w = 0.2;
    double noise_power_w = 0.0;  ///< 0 = derive thermal noise from bandwidth + noise figure
    double noise_figure_db = 7.0;
    double bandwidth_hz = 80e6;
    double rate_weight = 1.0;  ///< alpha, uniform over links
    double min_distance_m = 1.0;
    PathLossParams pathloss;

    // latent sub-network policy
    double latent_q_max_w = 0.2;
    double latent_jitter = 0.1;  ///< multiplicative jitter halfwidth; 0 = deterministic policy

    // synthetic-control estimator
    int panel_rows = 256;
    double sc_pgd_tol = 1e-10;
    int sc_pgd_max_iter = 100000;

    // counterfactual-update schedule
    double epsilon_a = 0.2;
    double epsilon_b = 2.0;

    // experiment harness (0 = keep the scenario's own value)
    int runs = 0;
    int iterations = 0;
    int k_plus_override = 0;   ///< desk-scale override of a scenario's K+
    int k_minus_override = 0;  ///< override of nonzero latent counts
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    bool parallel_runs = true;
    bool emit_run_csv = true;
    bool emit_traces = false;
    std::vector<int> sweep_links = {25, 50, 100, 150, 200};

    /// Noise power actually used: explicit value if set, otherwise thermal
    /// noise over the configured bandwidth plus the noise figure.
    double effective_noise_power_w() const;

    /// Canonical single-line JSON rendering (sorted keys); input to the
    /// manifest config hash.
    std::string canonical_json() const;
};

/// Parses and validates a config document. Accepts // comments. Throws
/// std::invalid_argument naming the offending key on unknown keys, type
/// mismatches, or out-of-range values.
SimConfig load_config(const std::string& json_text);

/// load_config over a file.
SimConfig load_config_file(const std::string& path);

/// Range checks shared by load_config and programmatic construction.
void validate_config(const SimConfig& cfg);

}  // namespace scwmmse
