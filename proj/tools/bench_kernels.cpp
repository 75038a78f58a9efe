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

// Times the serial reference loops against the OpenMP kernels on the three
// data-parallel stages (gain-matrix assembly, per-link estimator fitting,
// Monte-Carlo runs) and checks they agree bitwise.

#include <chrono>
#include <cstdio>
#include <cstring>

#include <omp.h>

#include "scwmmse/harness.hpp"
#include "scwmmse/netgen.hpp"

using namespace scwmmse;
using clock_type = std::chrono::steady_clock;

namespace {

template <typename F>
double time_ms(F&& fn) {
    auto start = clock_type::now();
    fn();
    return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

void report(const char* name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-24s serial %9.1f ms   openmp %9.1f ms   speedup %4.2fx   %s\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms, identical ? "bitwise-equal" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
    std::printf("threads: %d\n", omp_get_max_threads());

    {  // gain-matrix assembly
        SimConfig cfg;
        cfg.k_plus = quick ? 120 : 400;
        cfg.k_minus = quick ? 120 : 400;
        Geometry geom = generate_topology(cfg, 42);
        NetworkInstance serial_net, parallel_net;
        double ts = time_ms([&] { serial_net = build_gains(geom, cfg, 42, ExecPolicy::serial); });
        double tp = time_ms([&] { parallel_net = build_gains(geom, cfg, 42, ExecPolicy::parallel); });
        report("build_gains", ts, tp, serial_net.gains == parallel_net.gains);
    }

    {  // estimator fitting across links
        SimConfig cfg;
        cfg.k_plus = quick ? 24 : 48;
        cfg.k_minus = 24;
        Geometry geom = generate_topology(cfg, 7);
        NetworkInstance net = build_gains(geom, cfg, 7);
        Rng z_rng(11);
        LatentPolicy policy =
            make_latent_policy(cfg.k_minus, cfg.k_plus, cfg.latent_q_max_w, cfg.latent_jitter, z_rng);
        PanelData panel = collect_panel(net, policy, quick ? 128 : 256, 5);
        ScEstimator serial_est, parallel_est;
        double ts = time_ms(
            [&] { serial_est = fit_estimator(panel, ScVariant::conv, {}, ExecPolicy::serial); });
        double tp = time_ms(
            [&] { parallel_est = fit_estimator(panel, ScVariant::conv, {}, ExecPolicy::parallel); });
        report("fit_estimator", ts, tp, serial_est.coefficients == parallel_est.coefficients);
    }

    {  // Monte-Carlo runs
        Scenario scenario;
        scenario.name = "bench";
        scenario.algorithms = {AlgorithmSpec::parse("wmmse"), AlgorithmSpec::parse("wmmse_sc")};
        scenario.k_plus = quick ? 10 : 16;
        scenario.k_minus_train = scenario.k_minus_infer = quick ? 10 : 16;
        scenario.iterations = quick ? 60 : 150;
        scenario.runs = quick ? 6 : 12;
        SimConfig cfg;
        cfg.panel_rows = quick ? 64 : 128;
        ScenarioOutput serial_out, parallel_out;
        double ts =
            time_ms([&] { serial_out = run_scenario(scenario, cfg, ExecPolicy::serial); });
        double tp =
            time_ms([&] { parallel_out = run_scenario(scenario, cfg, ExecPolicy::parallel); });
        report("run_scenario", ts, tp,
               scenario_stats_csv(serial_out) == scenario_stats_csv(parallel_out));
    }
    return 0;
}
