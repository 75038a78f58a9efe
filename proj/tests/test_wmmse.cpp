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

#include <cmath>

#include "scwmmse/latentnet.hpp"
#include "scwmmse/wmmse.hpp"
#include "test_util.hpp"

using namespace scwmmse;
using testutil::golden_section;
using testutil::random_net;

namespace {

InterferenceObservation observe_static(const NetworkInstance& net, const WmmseState& state) {
    std::vector<double> p(net.num_known);
    for (int k = 0; k < net.num_known; ++k) p[k] = state.v[k] * state.v[k];
    std::vector<double> q(net.num_latent, 0.0);
    return observe_interference(net, p, q);
}

}  // namespace

TEST_CASE("initial states satisfy the state invariants") {
    NetworkInstance net = random_net(6, 0, 42);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng(seed);
        std::vector<double> v = draw_initial_amplitudes(net, rng);
        std::vector<double> p(6), q;
        for (int k = 0; k < 6; ++k) p[k] = v[k] * v[k];
        InterferenceObservation obs = observe_interference(net, p, q);
        WmmseState state = init_state(net, v, obs, EtaMode::observed);
        for (int k = 0; k < 6; ++k) {
            CHECK(state.w[k] > 0.0);
            CHECK(state.v[k] * state.v[k] <= net.max_power[k] + 1e-12);
            CHECK(state.v[k] > 0.0);
            CHECK(std::isfinite(state.u[k]));
            CHECK(std::isfinite(state.w[k]));
        }
    }
}

TEST_CASE("initialization is deterministic per seed") {
    NetworkInstance net = random_net(4, 0, 43);
    Rng a(77), b(77), c(78);
    CHECK(draw_initial_amplitudes(net, a) == draw_initial_amplitudes(net, b));
    Rng a2(77);
    CHECK(draw_initial_amplitudes(net, a2) != draw_initial_amplitudes(net, c));
}

TEST_CASE("initial amplitudes never exceed the cap across 1000 seeds") {
    // sampling sweep
    NetworkInstance net = random_net(5, 0, 44);
    net.max_power = {0.5, 1.0, 2.0, 0.1, 0.25};
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        Rng rng(seed);
        std::vector<double> v = draw_initial_amplitudes(net, rng);
        for (int k = 0; k < 5; ++k) {
            CHECK(v[k] * v[k] <= net.max_power[k] + 1e-12);
            CHECK(v[k] > 0.0);
        }
    }
}

TEST_CASE("u update, closed cases") {
    // h_kk v_k = 1 and denominator 2
    NetworkInstance net;
    net.num_known = 1;
    net.num_latent = 0;
    net.gains = {1.0};
    net.noise_power = {1.0};
    net.max_power = {4.0};
    net.weights = {1.0};
    std::vector<double> v{1.0};
    CHECK(update_u(net, v, /*eta=*/1.0, 0) == doctest::Approx(0.5).epsilon(1e-15));

    v[0] = 0.0;
    CHECK(update_u(net, v, 1.0, 0) == 0.0);
}

TEST_CASE("u update minimizes the mse (golden-section oracle)") {
    NetworkInstance net = random_net(5, 0, 45);
    Rng rng(3);
    WmmseState state;
    for (int k = 0; k < 5; ++k) {
        state.u.push_back(0.0);
        state.w.push_back(1.0);
        state.v.push_back(rng.uniform(0.05, 1.0));
    }
    for (int k = 0; k < 5; ++k) {
        double eta = 0.01 + 0.05 * k;
        double closed = update_u(net, state.v, eta, k);
        WmmseState probe = state;
        double numeric = golden_section(
            [&](double u) {
                probe.u[k] = u;
                return mse_term(net, probe, eta, k);
            },
            0.0, 2.0 * closed + 1.0);
        CHECK(std::fabs(numeric - closed) < 1e-8);
    }
}

TEST_CASE("w update, closed cases and the 1-D oracle") {
    CHECK(update_w(0.5, 1.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(update_w(0.0, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::isfinite(update_w(10.0, 10.0, 10.0)));  // clamped overshoot

    // after an exact u update, argmin_w (w e - log w) = 1/e
    NetworkInstance net = random_net(3, 0, 46);
    WmmseState state;
    Rng rng(8);
    for (int k = 0; k < 3; ++k) {
        state.u.push_back(0.0);
        state.w.push_back(1.0);
        state.v.push_back(rng.uniform(0.1, 1.0));
    }
    for (int k = 0; k < 3; ++k) {
        double eta = 0.1;
        state.u[k] = update_u(net, state.v, eta, k);
        double e = mse_term(net, state, eta, k);
        double w_closed = update_w(state.u[k], net.amp(k, k), state.v[k]);
        double w_numeric = golden_section([&](double w) { return w * e - std::log(w); },
                                          w_closed / 10.0, w_closed * 10.0);
        CHECK(w_closed == doctest::Approx(1.0 / e).epsilon(1e-10));
        CHECK(w_numeric == doctest::Approx(w_closed).epsilon(1e-7));
    }
}

TEST_CASE("v update honors the power cap exactly") {
    NetworkInstance net = random_net(4, 0, 47);
    Rng rng(14);
    WmmseState state;
    for (int k = 0; k < 4; ++k) {
        state.u.push_back(rng.uniform(0.2, 1.0));
        state.w.push_back(rng.uniform(1.0, 3.0));
        state.v.push_back(rng.uniform(0.1, 1.0));
    }

    SUBCASE("inactive constraint returns the closed form verbatim") {
        net.max_power.assign(4, 1e6);  // cap far away
        for (int k = 0; k < 4; ++k) {
            double lambda = -1.0;
            double v = update_v(net, state, k, &lambda);
            CHECK(lambda == 0.0);
            double numer = net.weights[k] * net.amp(k, k) * state.u[k] * state.w[k];
            double denom = 0.0;
            for (int j = 0; j < 4; ++j)
                denom += net.weights[j] * state.w[j] * net.gain(k, j) * state.u[j] * state.u[j];
            CHECK(v == doctest::Approx(numer / denom).epsilon(1e-14));
        }
    }

    SUBCASE("active constraint lands on the cap within 1e-10 relative") {
        net.max_power.assign(4, 1e-4);  // force the cap
        for (int k = 0; k < 4; ++k) {
            double lambda = 0.0;
            double v = update_v(net, state, k, &lambda);
            CHECK(lambda > 0.0);
            CHECK(v * v <= net.max_power[k]);
            CHECK(std::fabs(v * v - net.max_power[k]) <= 1e-10 * net.max_power[k]);
        }
    }

    SUBCASE("degenerate zero numerator yields zero") {
        state.u.assign(4, 0.0);
        double lambda = -1.0;
        CHECK(update_v(net, state, 0, &lambda) == 0.0);
        CHECK(lambda == 0.0);
    }
}

TEST_CASE("bisection matches a fine lambda-grid argmin") {
    // grid oracle for the capped v update
    NetworkInstance net = random_net(3, 0, 48);
    net.max_power.assign(3, 1e-3);
    Rng rng(15);
    WmmseState state;
    for (int k = 0; k < 3; ++k) {
        state.u.push_back(rng.uniform(0.5, 1.0));
        state.w.push_back(rng.uniform(1.0, 2.0));
        state.v.push_back(rng.uniform(0.1, 1.0));
    }
    for (int k = 0; k < 3; ++k) {
        double lambda = 0.0;
        double v_bis = update_v(net, state, k, &lambda);
        double numer = net.weights[k] * net.amp(k, k) * state.u[k] * state.w[k];
        double denom = 0.0;
        for (int j = 0; j < 3; ++j)
            denom += net.weights[j] * state.w[j] * net.gain(k, j) * state.u[j] * state.u[j];
        REQUIRE(numer / denom * (numer / denom) > net.max_power[k]);  // cap genuinely active
        double best_gap = 1e300;
        for (int i = 0; i <= 2000000; ++i) {
            double lam = 2.0 * lambda * i / 2000000.0;
            double v = numer / (denom + lam);
            best_gap = std::min(best_gap, std::fabs(v * v - net.max_power[k]));
        }
        CHECK(std::fabs(v_bis * v_bis - net.max_power[k]) <= best_gap + 1e-12);
    }
}

TEST_CASE("objective is nonincreasing across sweeps with a static channel") {
    // run-and-assert, block-coordinate-descent property (K- empty)
    NetworkInstance net = random_net(6, 0, 49);
    Rng rng(16);
    std::vector<double> v = draw_initial_amplitudes(net, rng);
    InterferenceObservation obs;
    {
        std::vector<double> p(6), q;
        for (int k = 0; k < 6; ++k) p[k] = v[k] * v[k];
        obs = observe_interference(net, p, q);
    }
    WmmseState state = init_state(net, v, obs, EtaMode::observed);
    std::vector<double> eta(net.noise_power.begin(), net.noise_power.begin() + 6);
    double prev = reformulated_objective(net, state, eta);
    for (int sweep = 0; sweep < 40; ++sweep) {
        obs = observe_static(net, state);
        wmmse_sweep(net, state, obs, EtaMode::observed);
        double now = reformulated_objective(net, state, eta);
        CHECK(now <= prev + 1e-9 * std::fabs(prev));
        prev = now;
        for (int k = 0; k < 6; ++k)
            CHECK(state.v[k] * state.v[k] - net.max_power[k] <= 1e-10);
    }
}

TEST_CASE("every block update is nonincreasing (hook instrumentation)") {
    NetworkInstance net = random_net(5, 2, 50);
    Rng rng(17);
    std::vector<double> q{0.4, 0.7};  // frozen latent powers
    std::vector<double> v = draw_initial_amplitudes(net, rng);
    std::vector<double> p(5);
    for (int k = 0; k < 5; ++k) p[k] = v[k] * v[k];
    InterferenceObservation obs = observe_interference(net, p, q);
    WmmseState state = init_state(net, v, obs, EtaMode::observed);

    std::vector<double> eta = obs.hidden;
    double prev = reformulated_objective(net, state, eta);
    int violations = 0;
    std::function<void(int, char)> hook = [&](int, char) {
        double now = reformulated_objective(net, state, eta);
        if (now > prev + 1e-9 * std::fabs(prev)) ++violations;
        prev = now;
    };
    SweepHooks hooks;
    hooks.after_block = &hook;
    for (int sweep = 0; sweep < 25; ++sweep) {
        for (int k = 0; k < 5; ++k) p[k] = state.v[k] * state.v[k];
        obs = observe_interference(net, p, q);  // eta is constant: q frozen
        wmmse_sweep(net, state, obs, EtaMode::observed, hooks);
    }
    CHECK(violations == 0);
}

TEST_CASE("single link converges to full power in at most 3 sweeps") {
    // waterfilling degenerates to full power; holds when p_max <~ 8 sigma^2/h^2
    for (double p_max : {1.0, 4.0, 8.0}) {
        NetworkInstance net;
        net.num_known = 1;
        net.num_latent = 0;
        net.gains = {1.0};
        net.noise_power = {1.0};
        net.max_power = {p_max};
        net.weights = {1.0};
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Rng rng(seed);
            std::vector<double> v = draw_initial_amplitudes(net, rng);
            std::vector<double> p{v[0] * v[0]}, q;
            WmmseState state = init_state(net, v, observe_interference(net, p, q),
                                          EtaMode::observed);
            for (int sweep = 0; sweep < 3; ++sweep) {
                p[0] = state.v[0] * state.v[0];
                wmmse_sweep(net, state, observe_interference(net, p, q), EtaMode::observed);
            }
            CHECK(state.v[0] * state.v[0] == doctest::Approx(p_max).epsilon(1e-9));
        }
    }
}

TEST_CASE("local-only mode coincides with observed mode when K- is empty") {
    NetworkInstance net = random_net(5, 0, 52);
    Rng rng_a(5), rng_b(5);
    std::vector<double> va = draw_initial_amplitudes(net, rng_a);
    std::vector<double> vb = draw_initial_amplitudes(net, rng_b);
    std::vector<double> p(5), q;
    for (int k = 0; k < 5; ++k) p[k] = va[k] * va[k];
    WmmseState a = init_state(net, va, observe_interference(net, p, q), EtaMode::observed);
    WmmseState b = init_state(net, vb, observe_interference(net, p, q), EtaMode::local_only);
    for (int sweep = 0; sweep < 10; ++sweep) {
        for (int k = 0; k < 5; ++k) p[k] = a.v[k] * a.v[k];
        InterferenceObservation obs = observe_interference(net, p, q);
        wmmse_sweep(net, a, obs, EtaMode::observed);
        wmmse_sweep(net, b, obs, EtaMode::local_only);
    }
    CHECK(a.u == b.u);
    CHECK(a.w == b.w);
    CHECK(a.v == b.v);
}

TEST_CASE("closed forms are self-consistent at a fixed point") {
    NetworkInstance net = random_net(4, 0, 53);
    Rng rng(19);
    std::vector<double> v = draw_initial_amplitudes(net, rng);
    std::vector<double> p(4), q;
    for (int k = 0; k < 4; ++k) p[k] = v[k] * v[k];
    WmmseState state = init_state(net, v, observe_interference(net, p, q), EtaMode::observed);
    double delta = 1.0;
    for (int sweep = 0; sweep < 5000 && delta > 1e-10; ++sweep) {
        WmmseState prior = state;
        for (int k = 0; k < 4; ++k) p[k] = state.v[k] * state.v[k];
        wmmse_sweep(net, state, observe_interference(net, p, q), EtaMode::observed);
        delta = 0.0;
        for (int k = 0; k < 4; ++k) {
            delta = std::max(delta, std::fabs(state.u[k] - prior.u[k]));
            delta = std::max(delta, std::fabs(state.w[k] - prior.w[k]));
            delta = std::max(delta, std::fabs(state.v[k] - prior.v[k]));
        }
    }
    REQUIRE(delta <= 1e-10);
    for (int k = 0; k < 4; ++k) p[k] = state.v[k] * state.v[k];
    InterferenceObservation obs = observe_interference(net, p, q);
    for (int k = 0; k < 4; ++k) {
        CHECK(update_u(net, state.v, obs.hidden[k], k) ==
              doctest::Approx(state.u[k]).epsilon(1e-8));
        CHECK(update_w(state.u[k], net.amp(k, k), state.v[k]) ==
              doctest::Approx(state.w[k]).epsilon(1e-8));
        CHECK(update_v(net, state, k) == doctest::Approx(state.v[k]).epsilon(1e-8));
    }
}

TEST_CASE("sum-rate convergence helper") {
    std::vector<double> flat{1, 1, 1, 1, 1, 1, 1};
    CHECK(sum_rate_converged(flat));
    std::vector<double> moving{1, 2, 3, 4, 5, 6, 7};
    CHECK(!sum_rate_converged(moving));
    std::vector<double> tiny{1, 2};
    CHECK(!sum_rate_converged(tiny));
}
