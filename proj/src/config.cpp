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

#include "scwmmse/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace scwmmse {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument("config: " + msg); }

void check_keys(const json& obj, const char* section, std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) known = true;
        if (!known) fail(std::string("unknown key '") + section + "." + it.key() + "'");
    }
}

template <typename T>
void get(const json& obj, const char* section, const char* key, T& out) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception&) {
        fail(std::string("bad value type for '") + section + "." + key + "'");
    }
}

json pathloss_to_json(const PathLossParams& p) {
    return json{{"frequency_ghz", p.frequency_ghz},
                {"slope1_exponent", p.slope1_exponent},
                {"slope2_exponent", p.slope2_exponent},
                {"breakpoint_distance_m", p.breakpoint_distance_m},
                {"intercept_db", p.intercept_db},
                {"shadow_sigma_db", p.shadow_sigma_db},
                {"los_exponent", p.los_exponent},
                {"los_decay_distance_m", p.los_decay_distance_m},
                {"blockage_prob", p.blockage_prob},
                {"blockage_loss_db", p.blockage_loss_db}};
}

}  // namespace

double SimConfig::effective_noise_power_w() const {
    if (noise_power_w > 0.0) return noise_power_w;
    // kT at 290 K is -174 dBm/Hz.
    double dbm = -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

std::string SimConfig::canonical_json() const {
    json j;
    j["network"] = {{"k_plus", k_plus},
                    {"k_minus", k_minus},
                    {"deployment_radius_m", deployment_radius_m},
                    {"rx_radius_m", rx_radius_m},
                    {"max_power_w", max_power_w},
                    {"noise_power_w", noise_power_w},
                    {"noise_figure_db", noise_figure_db},
                    {"bandwidth_hz", bandwidth_hz},
                    {"rate_weight", rate_weight},
                    {"min_distance_m", min_distance_m}};
    j["pathloss"] = pathloss_to_json(pathloss);
    j["latent"] = {{"q_max_w", latent_q_max_w}, {"jitter_halfwidth", latent_jitter}};
    j["sc"] = {{"panel_rows", panel_rows}, {"pgd_tol", sc_pgd_tol}, {"pgd_max_iter", sc_pgd_max_iter}};
    j["epsilon"] = {{"a", epsilon_a}, {"b", epsilon_b}};
    j["harness"] = {{"runs", runs},
                    {"iterations", iterations},
                    {"k_plus_override", k_plus_override},
                    {"k_minus_override", k_minus_override},
                    {"seed", seed},
                    {"out_dir", out_dir},
                    {"parallel_runs", parallel_runs},
                    {"emit_run_csv", emit_run_csv},
                    {"emit_traces", emit_traces},
                    {"sweep_links", sweep_links}};
    return j.dump();  // nlohmann emits object keys sorted
}

void validate_config(const SimConfig& cfg) {
    if (cfg.k_plus < 0 || cfg.k_minus < 0) fail("link counts must be >= 0");
    if (cfg.deployment_radius_m < 0 || cfg.rx_radius_m < 0) fail("radii must be >= 0");
    if ((cfg.k_plus + cfg.k_minus) > 0 && (cfg.deployment_radius_m == 0 || cfg.rx_radius_m == 0))
        fail("zero radius with a nonzero link count");
    if (cfg.max_power_w <= 0) fail("max_power_w must be > 0");
    if (cfg.noise_power_w < 0) fail("noise_power_w must be >= 0 (0 = auto)");
    if (cfg.noise_power_w == 0 && cfg.bandwidth_hz <= 0) fail("bandwidth_hz must be > 0");
    if (cfg.rate_weight < 0) fail("rate_weight must be >= 0");
    if (cfg.min_distance_m <= 0) fail("min_distance_m must be > 0");
    const PathLossParams& p = cfg.pathloss;
    if (p.breakpoint_distance_m <= 0) fail("pathloss.breakpoint_distance_m must be > 0");
    if (p.shadow_sigma_db < 0) fail("pathloss.shadow_sigma_db must be >= 0");
    if (p.slope1_exponent < 0 || p.slope2_exponent < 0 || p.los_exponent < 0)
        fail("pathloss exponents must be >= 0");
    if (p.blockage_prob < 0 || p.blockage_prob > 1) fail("pathloss.blockage_prob must be in [0,1]");
    if (cfg.latent_q_max_w <= 0) fail("latent.q_max_w must be > 0");
    if (cfg.latent_jitter < 0) fail("latent.jitter_halfwidth must be >= 0");
    if (cfg.panel_rows < 1) fail("sc.panel_rows must be >= 1");
    if (cfg.sc_pgd_tol <= 0) fail("sc.pgd_tol must be > 0");
    if (cfg.sc_pgd_max_iter < 1) fail("sc.pgd_max_iter must be >= 1");
    if (cfg.epsilon_a < 0 || cfg.epsilon_a > 1) fail("epsilon.a must be in [0,1]");
    if (cfg.epsilon_b <= 0) fail("epsilon.b must be > 0");
    if (cfg.runs < 0 || cfg.iterations < 0) fail("harness.runs/iterations must be >= 0");
    if (cfg.k_plus_override < 0 || cfg.k_minus_override < 0)
        fail("harness k overrides must be >= 0 (0 = none)");
    for (int links : cfg.sweep_links)
        if (links < 1) fail("harness.sweep_links entries must be >= 1");
}

SimConfig load_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::exception& e) {
        fail(std::string("parse error: ") + e.what());
    }
    if (!j.is_object()) fail("top level must be an object");
    check_keys(j, "", {"network", "pathloss", "latent", "sc", "epsilon", "harness"});

    SimConfig cfg;
    if (j.contains("network")) {
        const json& n = j["network"];
        check_keys(n, "network",
                   {"k_plus", "k_minus", "deployment_radius_m", "rx_radius_m", "max_power_w",
                    "noise_power_w", "noise_figure_db", "bandwidth_hz", "rate_weight",
                    "min_distance_m"});
        get(n, "network", "k_plus", cfg.k_plus);
        get(n, "network", "k_minus", cfg.k_minus);
        get(n, "network", "deployment_radius_m", cfg.deployment_radius_m);
        get(n, "network", "rx_radius_m", cfg.rx_radius_m);
        get(n, "network", "max_power_w", cfg.max_power_w);
        get(n, "network", "noise_power_w", cfg.noise_power_w);
        get(n, "network", "noise_figure_db", cfg.noise_figure_db);
        get(n, "network", "bandwidth_hz", cfg.bandwidth_hz);
        get(n, "network", "rate_weight", cfg.rate_weight);
        get(n, "network", "min_distance_m", cfg.min_distance_m);
    }
    if (j.contains("pathloss")) {
        const json& p = j["pathloss"];
        check_keys(p, "pathloss",
                   {"frequency_ghz", "slope1_exponent", "slope2_exponent", "breakpoint_distance_m",
                    "intercept_db", "shadow_sigma_db", "los_exponent", "los_decay_distance_m",
                    "blockage_prob", "blockage_loss_db"});
        get(p, "pathloss", "frequency_ghz", cfg.pathloss.frequency_ghz);
        get(p, "pathloss", "slope1_exponent", cfg.pathloss.slope1_exponent);
        get(p, "pathloss", "slope2_exponent", cfg.pathloss.slope2_exponent);
        get(p, "pathloss", "breakpoint_distance_m", cfg.pathloss.breakpoint_distance_m);
        get(p, "pathloss", "intercept_db", cfg.pathloss.intercept_db);
        get(p, "pathloss", "shadow_sigma_db", cfg.pathloss.shadow_sigma_db);
        get(p, "pathloss", "los_exponent", cfg.pathloss.los_exponent);
        get(p, "pathloss", "los_decay_distance_m", cfg.pathloss.los_decay_distance_m);
        get(p, "pathloss", "blockage_prob", cfg.pathloss.blockage_prob);
        get(p, "pathloss", "blockage_loss_db", cfg.pathloss.blockage_loss_db);
    }
    if (j.contains("latent")) {
        const json& l = j["latent"];
        check_keys(l, "latent", {"q_max_w", "jitter_halfwidth"});
        get(l, "latent", "q_max_w", cfg.latent_q_max_w);
        get(l, "latent", "jitter_halfwidth", cfg.latent_jitter);
    }
    if (j.contains("sc")) {
        const json& s = j["sc"];
        check_keys(s, "sc", {"panel_rows", "pgd_tol", "pgd_max_iter"});
        get(s, "sc", "panel_rows", cfg.panel_rows);
        get(s, "sc", "pgd_tol", cfg.sc_pgd_tol);
        get(s, "sc", "pgd_max_iter", cfg.sc_pgd_max_iter);
    }
    if (j.contains("epsilon")) {
        const json& e = j["epsilon"];
        check_keys(e, "epsilon", {"a", "b"});
        get(e, "epsilon", "a", cfg.epsilon_a);
        get(e, "epsilon", "b", cfg.epsilon_b);
    }
    if (j.contains("harness")) {
        const json& h = j["harness"];
        check_keys(h, "harness",
                   {"runs", "iterations", "k_plus_override", "k_minus_override", "seed", "out_dir",
                    "parallel_runs", "emit_run_csv", "emit_traces", "sweep_links"});
        get(h, "harness", "runs", cfg.runs);
        get(h, "harness", "iterations", cfg.iterations);
        get(h, "harness", "k_plus_override", cfg.k_plus_override);
        get(h, "harness", "k_minus_override", cfg.k_minus_override);
        get(h, "harness", "seed", cfg.seed);
        get(h, "harness", "out_dir", cfg.out_dir);
        get(h, "harness", "parallel_runs", cfg.parallel_runs);
        get(h, "harness", "emit_run_csv", cfg.emit_run_csv);
        get(h, "harness", "emit_traces", cfg.emit_traces);
        get(h, "harness", "sweep_links", cfg.sweep_links);
    }
    validate_config(cfg);
    return cfg;
}

SimConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_config(ss.str());
}

}  // namespace scwmmse
