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

#include "scwmmse/netgen.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace scwmmse {

namespace {

Point2 draw_in_disk(Point2 center, double radius, Rng& rng) {
    // radius = R*sqrt(u) makes the draw area-uniform
    double r = radius * std::sqrt(rng.uniform01());
    double theta = 2.0 * 3.14159265358979323846 * rng.uniform01();
    return {center.x + r * std::cos(theta), center.y + r * std::sin(theta)};
}

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace

Geometry generate_topology(const SimConfig& cfg, std::uint64_t seed) {
    const int n = cfg.k_plus + cfg.k_minus;
    if (n < 0) throw std::invalid_argument("generate_topology: negative link count");
    if (n > 0 && (cfg.deployment_radius_m <= 0.0 || cfg.rx_radius_m <= 0.0))
        throw std::invalid_argument("generate_topology: zero-radius disk with nonzero link count");

    Geometry geom;
    geom.deployment_radius_m = cfg.deployment_radius_m;
    geom.rx_radius_m = cfg.rx_radius_m;
    geom.num_known = cfg.k_plus;
    geom.num_latent = cfg.k_minus;
    geom.tx_positions.reserve(n);
    geom.rx_positions.reserve(n);

    Rng rng(derive_seed(seed, stream_tag::topology));
    for (int i = 0; i < n; ++i) {
        Point2 tx = draw_in_disk({0.0, 0.0}, cfg.deployment_radius_m, rng);
        Point2 rx = draw_in_disk(tx, cfg.rx_radius_m, rng);
        geom.tx_positions.push_back(tx);
        geom.rx_positions.push_back(rx);
    }
    return geom;
}

double path_loss_db(double distance_m, const PathLossParams& params, Rng& rng) {
    if (distance_m <= 0.0) throw std::domain_error("path_loss_db: distance must be > 0");

    // Fixed draw order so a caller-held stream stays aligned regardless of
    // which branches fire.
    const double u_los = rng.uniform01();
    const double u_block = rng.uniform01();
    const double z_shadow = rng.normal();

    double p_los = params.los_decay_distance_m > 0.0
                       ? std::exp(-distance_m / params.los_decay_distance_m)
                       : 0.0;
    const bool los = u_los < p_los;

    double pl = params.intercept_db;
    if (los) {
        pl += 10.0 * params.los_exponent * std::log10(distance_m);
    } else if (distance_m <= params.breakpoint_distance_m) {
        pl += 10.0 * params.slope1_exponent * std::log10(distance_m);
    } else {
        pl += 10.0 * params.slope1_exponent * std::log10(params.breakpoint_distance_m) +
              10.0 * params.slope2_exponent * std::log10(distance_m / params.breakpoint_distance_m);
    }
    if (u_block < params.blockage_prob) pl += params.blockage_loss_db;
    pl += params.shadow_sigma_db * z_shadow;
    return pl;
}

NetworkInstance build_gains(const Geometry& geom, const SimConfig& cfg, std::uint64_t seed,
                            ExecPolicy policy) {
    const int n = geom.total_links();
    NetworkInstance net;
    net.num_known = geom.num_known;
    net.num_latent = geom.num_latent;
    net.gains.assign(static_cast<size_t>(n) * n, 0.0);
    net.noise_power.assign(n, cfg.effective_noise_power_w());
    net.max_power.assign(geom.num_known, cfg.max_power_w);
    net.weights.assign(geom.num_known, cfg.rate_weight);

    const std::uint64_t base = derive_seed(seed, stream_tag::gains);
    auto entry = [&](int j, int k) {
        double d = std::max(distance(geom.tx_positions[j], geom.rx_positions[k]),
                            cfg.min_distance_m);
        Rng rng(derive_seed(base, static_cast<std::uint64_t>(j) * n + k));
        net.gain(j, k) = db_to_linear(-path_loss_db(d, cfg.pathloss, rng));
    };

    if (policy == ExecPolicy::parallel) {
#pragma omp parallel for collapse(2) schedule(static)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) entry(j, k);
    } else {
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) entry(j, k);
    }
    return net;
}

std::string topology_csv(const Geometry& geom) {
    std::ostringstream out;
    out << "link,kind,tx_x,tx_y,rx_x,rx_y\n";
    for (int i = 0; i < geom.total_links(); ++i) {
        out << i << ',' << (i < geom.num_known ? "known" : "latent") << ','
            << format_double(geom.tx_positions[i].x) << ',' << format_double(geom.tx_positions[i].y)
            << ',' << format_double(geom.rx_positions[i].x) << ','
            << format_double(geom.rx_positions[i].y) << '\n';
    }
    return out.str();
}

std::string gains_csv(const NetworkInstance& net) {
    std::ostringstream out;
    out << "tx";
    for (int k = 0; k < net.total_links(); ++k) out << ",rx" << k;
    out << '\n';
    for (int j = 0; j < net.total_links(); ++j) {
        out << j;
        for (int k = 0; k < net.total_links(); ++k) out << ',' << format_double(net.gain(j, k));
        out << '\n';
    }
    return out.str();
}

}  // namespace scwmmse
