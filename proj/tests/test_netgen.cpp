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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "scwmmse/netgen.hpp"

using namespace scwmmse;

namespace {
double dist(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }
}  // namespace

TEST_CASE("topology respects the disk invariants") {
    SimConfig cfg;
    cfg.k_plus = 1;
    cfg.k_minus = 0;
    Geometry geom = generate_topology(cfg, 7);
    REQUIRE(geom.total_links() == 1);
    CHECK(dist(geom.tx_positions[0], {0, 0}) <= 200.0);
    CHECK(dist(geom.tx_positions[0], geom.rx_positions[0]) <= 25.0);

    cfg.k_plus = 30;
    cfg.k_minus = 10;
    geom = generate_topology(cfg, 12345);
    for (int i = 0; i < geom.total_links(); ++i) {
        CHECK(dist(geom.tx_positions[i], {0, 0}) <= cfg.deployment_radius_m);
        CHECK(dist(geom.tx_positions[i], geom.rx_positions[i]) <= cfg.rx_radius_m);
    }
}

TEST_CASE("empty geometry and invalid configs") {
    SimConfig cfg;
    cfg.k_plus = 0;
    cfg.k_minus = 0;
    Geometry geom = generate_topology(cfg, 1);
    CHECK(geom.total_links() == 0);

    cfg.k_plus = 1;
    cfg.deployment_radius_m = 0.0;
    CHECK_THROWS_AS(generate_topology(cfg, 1), std::invalid_argument);
}

TEST_CASE("same seed reproduces positions bit for bit") {
    SimConfig cfg;
    cfg.k_plus = 8;
    cfg.k_minus = 4;
    Geometry a = generate_topology(cfg, 99);
    Geometry b = generate_topology(cfg, 99);
    Geometry c = generate_topology(cfg, 100);
    CHECK(topology_csv(a) == topology_csv(b));
    CHECK(topology_csv(a) != topology_csv(c));
}

TEST_CASE("path loss hits the intercept at 1 m with randomness off") {
    PathLossParams p = PathLossParams::deterministic();
    Rng rng(1);
    CHECK(path_loss_db(1.0, p, rng) == doctest::Approx(p.intercept_db).epsilon(1e-15));
}

TEST_CASE("path loss is continuous at the breakpoint") {
    PathLossParams p = PathLossParams::deterministic();
    Rng rng(1);
    double below = path_loss_db(p.breakpoint_distance_m * (1.0 - 1e-12), p, rng);
    double above = path_loss_db(p.breakpoint_distance_m * (1.0 + 1e-12), p, rng);
    CHECK(below == doctest::Approx(above).epsilon(1e-9));
}

TEST_CASE("path loss is nondecreasing on a 1000-point grid with randomness off") {
    // grid evaluation oracle
    PathLossParams p = PathLossParams::deterministic();
    Rng rng(1);
    double prev = -1e300;
    for (int i = 1; i <= 1000; ++i) {
        double d = 0.5 * i;
        double pl = path_loss_db(d, p, rng);
        CHECK(pl >= prev - 1e-12);
        prev = pl;
    }
}

TEST_CASE("path loss rejects nonpositive distances") {
    PathLossParams p;
    Rng rng(1);
    CHECK_THROWS_AS(path_loss_db(0.0, p, rng), std::domain_error);
    CHECK_THROWS_AS(path_loss_db(-3.0, p, rng), std::domain_error);
}

TEST_CASE("zero path loss maps to unit gain") {
    SimConfig cfg;
    cfg.k_plus = 2;
    cfg.k_minus = 0;
    cfg.pathloss = PathLossParams::deterministic();
    cfg.pathloss.intercept_db = 0.0;
    cfg.pathloss.slope1_exponent = 0.0;
    cfg.pathloss.slope2_exponent = 0.0;
    Geometry geom = generate_topology(cfg, 3);
    NetworkInstance net = build_gains(geom, cfg, 3);
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) CHECK(net.gain(j, k) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("cross gain is below self gain at maximal separation") {
    SimConfig cfg;
    cfg.pathloss = PathLossParams::deterministic();
    Geometry geom;
    geom.deployment_radius_m = 200;
    geom.rx_radius_m = 25;
    geom.num_known = 2;
    geom.num_latent = 0;
    geom.tx_positions = {{-200, 0}, {200, 0}};
    geom.rx_positions = {{-195, 0}, {195, 0}};
    NetworkInstance net = build_gains(geom, cfg, 5);
    CHECK(net.gain(0, 1) < net.gain(1, 1));
    CHECK(net.gain(1, 0) < net.gain(0, 0));
}

TEST_CASE("gain matrix matches recomputation from stored positions") {
    // recomputation oracle: independent arithmetic from the dumped geometry
    SimConfig cfg;
    cfg.k_plus = 6;
    cfg.k_minus = 3;
    cfg.pathloss = PathLossParams::deterministic();
    Geometry geom = generate_topology(cfg, 17);
    NetworkInstance net = build_gains(geom, cfg, 17);
    const PathLossParams& p = cfg.pathloss;
    for (int j = 0; j < net.total_links(); ++j) {
        for (int k = 0; k < net.total_links(); ++k) {
            double d = std::max(dist(geom.tx_positions[j], geom.rx_positions[k]), 1.0);
            double pl = p.intercept_db;
            if (d <= p.breakpoint_distance_m) {
                pl += 10.0 * p.slope1_exponent * std::log10(d);
            } else {
                pl += 10.0 * p.slope1_exponent * std::log10(p.breakpoint_distance_m) +
                      10.0 * p.slope2_exponent * std::log10(d / p.breakpoint_distance_m);
            }
            CHECK(net.gain(j, k) == doctest::Approx(std::pow(10.0, -pl / 10.0)).epsilon(1e-12));
        }
    }
}

TEST_CASE("coincident endpoints are clamped to the minimum distance") {
    SimConfig cfg;
    cfg.pathloss = PathLossParams::deterministic();
    Geometry geom;
    geom.deployment_radius_m = 200;
    geom.rx_radius_m = 25;
    geom.num_known = 1;
    geom.num_latent = 0;
    geom.tx_positions = {{10, 10}};
    geom.rx_positions = {{10, 10}};  // distance 0, clamped to 1 m
    NetworkInstance net = build_gains(geom, cfg, 5);
    CHECK(net.gain(0, 0) ==
          doctest::Approx(std::pow(10.0, -cfg.pathloss.intercept_db / 10.0)).epsilon(1e-12));
}

TEST_CASE("instances are deterministic with shadowing and mixtures enabled") {
    SimConfig cfg;
    cfg.k_plus = 5;
    cfg.k_minus = 5;
    Geometry geom = generate_topology(cfg, 8);
    NetworkInstance a = build_gains(geom, cfg, 8);
    NetworkInstance b = build_gains(geom, cfg, 8);
    NetworkInstance c = build_gains(geom, cfg, 9);
    CHECK(gains_csv(a) == gains_csv(b));
    CHECK(gains_csv(a) != gains_csv(c));
    for (double g : a.gains) {
        CHECK(std::isfinite(g));
        CHECK(g >= 0.0);
    }
    for (int k = 0; k < a.num_known; ++k) CHECK(a.gain(k, k) > 0.0);
}

TEST_CASE("serial and OpenMP gain assembly agree bitwise") {
    SimConfig cfg;
    cfg.k_plus = 12;
    cfg.k_minus = 12;
    Geometry geom = generate_topology(cfg, 21);
    NetworkInstance serial = build_gains(geom, cfg, 21, ExecPolicy::serial);
    NetworkInstance parallel = build_gains(geom, cfg, 21, ExecPolicy::parallel);
    CHECK(serial.gains == parallel.gains);
}

TEST_CASE("dB / linear conversion round-trips to 1e-12 relative") {
    Rng rng(4);
    for (int i = 0; i < 1000; ++i) {
        double g = std::pow(10.0, rng.uniform(-15.0, 3.0));
        CHECK(db_to_linear(linear_to_db(g)) == doctest::Approx(g).epsilon(1e-12));
    }
}

TEST_CASE("transmitter radii follow the disk-uniform law (KS < 0.02)") {
    SimConfig cfg;
    cfg.k_plus = 10000;
    cfg.k_minus = 0;
    Geometry geom = generate_topology(cfg, 31);
    std::vector<double> radii;
    radii.reserve(10000);
    for (const Point2& tx : geom.tx_positions) radii.push_back(std::hypot(tx.x, tx.y));
    std::sort(radii.begin(), radii.end());
    const double R = cfg.deployment_radius_m;
    double ks = 0.0;
    for (size_t i = 0; i < radii.size(); ++i) {
        double model = radii[i] * radii[i] / (R * R);
        double lo = static_cast<double>(i) / radii.size();
        double hi = static_cast<double>(i + 1) / radii.size();
        ks = std::max({ks, std::fabs(model - lo), std::fabs(model - hi)});
    }
    CHECK(ks < 0.02);
}
