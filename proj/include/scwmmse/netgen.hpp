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

#include "scwmmse/common.hpp"
#include "scwmmse/config.hpp"

namespace scwmmse {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// Link endpoints. Transmitters are area-uniform in the deployment disk
/// (radius R about the origin); each receiver is area-uniform in a disk of
/// rx_radius about its own transmitter. Links [0, num_known) are the
/// optimized set, links [num_known, num_known + num_latent) the latent set.
struct Geometry {
    std::vector<Point2> tx_positions;
    std::vector<Point2> rx_positions;
    double deployment_radius_m = 0.0;
    double rx_radius_m = 0.0;
    int num_known = 0;
    int num_latent = 0;

    int total_links() const { return num_known + num_latent; }
};

/// A generated channel instance: the full cross-gain matrix over known and
/// latent links plus the per-link constants of the optimization problem.
struct NetworkInstance {
    int num_known = 0;   ///< K, optimized links (indices 0..K-1)
    int num_latent = 0;  ///< latent links (indices K..K+M-1)
    /// Row-major (K+M) x (K+M); gain(j, k) is the linear power gain from the
    /// transmitter of link j to the receiver of link k.
    std::vector<double> gains;
    std::vector<double> noise_power;  ///< sigma_k^2 per link, watts
    std::vector<double> max_power;    ///< p_max per known link, watts
    std::vector<double> weights;      ///< rate weight alpha_k per known link

    int total_links() const { return num_known + num_latent; }
    double gain(int j, int k) const { return gains[static_cast<size_t>(j) * total_links() + k]; }
    double& gain(int j, int k) { return gains[static_cast<size_t>(j) * total_links() + k]; }
    /// Channel amplitude |h_{j,k}| = sqrt(gain).
    double amp(int j, int k) const { return std::sqrt(gain(j, k)); }
};

/// Draws link positions for cfg.k_plus known and cfg.k_minus latent links.
/// Identical (cfg, seed) pairs produce identical geometry. Throws
/// std::invalid_argument for a zero-radius disk with a nonzero link count.
Geometry generate_topology(const SimConfig& cfg, std::uint64_t seed);

/// Path loss in dB at the given distance. Deterministic given the rng
/// state: consumes one LOS draw, one blockage draw and one shadowing draw
/// regardless of parameter values. The deterministic part is dual-slope
/// log-distance, continuous at the breakpoint. Throws std::domain_error
/// for distance <= 0.
double path_loss_db(double distance_m, const PathLossParams& params, Rng& rng);

/// Assembles the gain matrix from geometry: gain = 10^(-PL/10) per
/// transmitter/receiver pair, with tx-rx distances clamped below at
/// cfg.min_distance_m. Each matrix entry draws from its own stream derived
/// from (seed, j, k), so the serial and OpenMP lanes agree bitwise.
NetworkInstance build_gains(const Geometry& geom, const SimConfig& cfg, std::uint64_t seed,
                            ExecPolicy policy = ExecPolicy::parallel);

/// Topology dump, one row per link: link,kind,tx_x,tx_y,rx_x,rx_y.
std::string topology_csv(const Geometry& geom);

/// Gain-matrix dump: header row of receiver link ids, one row per transmitter.
std::string gains_csv(const NetworkInstance& net);

}  // namespace scwmmse
