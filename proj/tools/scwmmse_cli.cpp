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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "scwmmse/harness.hpp"
#include "scwmmse/latentnet.hpp"
#include "scwmmse/netgen.hpp"
#include "scwmmse/synthctl.hpp"

namespace fs = std::filesystem;
using namespace scwmmse;

namespace {

bool quiet_log() {
    const char* lvl = std::getenv("SCWMMSE_LOG");
    return lvl && std::string(lvl) == "quiet";
}

void info(const std::string& msg) {
    if (!quiet_log()) std::cerr << "[scwmmse] " << msg << "\n";
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
}

struct GlobalArgs {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int runs = 0;
    int iterations = 0;
    std::string out_dir;
    std::string algorithms;
    std::string sc_variant;
};

SimConfig effective_config(const GlobalArgs& args) {
    SimConfig cfg = args.config_path.empty() ? SimConfig{} : load_config_file(args.config_path);
    if (args.seed_set) cfg.seed = args.seed;
    if (args.runs > 0) cfg.runs = args.runs;
    if (args.iterations > 0) cfg.iterations = args.iterations;
    if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
    validate_config(cfg);
    return cfg;
}

ScVariant parse_variant(const std::string& name) {
    if (name == "conv") return ScVariant::conv;
    if (name == "free") return ScVariant::free_;
    if (name == "center") return ScVariant::center;
    if (name == "dirich") return ScVariant::dirich;
    throw std::invalid_argument("unknown sc variant '" + name + "' (conv|free|center|dirich)");
}

Scenario resolve_scenario(const std::string& name, const GlobalArgs& args, const SimConfig& cfg) {
    std::optional<Scenario> builtin = find_builtin(name);
    Scenario scenario;
    if (builtin) {
        scenario = std::move(*builtin);
    } else if (fs::exists(name)) {
        std::ifstream in(name);
        std::ostringstream ss;
        ss << in.rdbuf();
        scenario = scenario_from_json(ss.str());
    } else {
        throw std::invalid_argument("unknown scenario '" + name +
                                    "' (not a builtin, not a readable file)");
    }
    scenario = apply_overrides(scenario, cfg);
    if (!args.algorithms.empty()) {
        scenario.algorithms.clear();
        std::istringstream list(args.algorithms);
        std::string id;
        while (std::getline(list, id, ','))
            if (!id.empty()) scenario.algorithms.push_back(AlgorithmSpec::parse(id));
    }
    if (!args.sc_variant.empty()) {
        ScVariant variant = parse_variant(args.sc_variant);
        for (AlgorithmSpec& a : scenario.algorithms)
            if (a.kind == AlgorithmSpec::Kind::sc) a.sc_variant = variant;
    }
    return scenario;
}

int cmd_scenario(const std::string& name, const GlobalArgs& args) {
    SimConfig cfg = effective_config(args);
    Scenario scenario = resolve_scenario(name, args, cfg);
    fs::create_directories(cfg.out_dir);
    ExecPolicy policy = cfg.parallel_runs ? ExecPolicy::parallel : ExecPolicy::serial;

    std::vector<std::string> files;
    std::vector<std::string> diagnostics;
    if (!scenario.sweep_links.empty()) {
        info("running sweep scenario '" + scenario.name + "'");
        SweepOutput out = run_sweep(scenario, cfg, policy);
        std::string stats_name = scenario.name + ".csv";
        write_file(fs::path(cfg.out_dir) / stats_name, sweep_csv(out));
        files.push_back(stats_name);
        diagnostics = out.diagnostics;
    } else {
        info("running scenario '" + scenario.name + "' (" + std::to_string(scenario.runs) +
             " runs, " + std::to_string(scenario.iterations) + " iterations)");
        ScenarioOutput out = run_scenario(scenario, cfg, policy);
        std::string stats_name = scenario.name + ".csv";
        write_file(fs::path(cfg.out_dir) / stats_name, scenario_stats_csv(out));
        files.push_back(stats_name);
        if (cfg.emit_run_csv) {
            std::string runs_name = scenario.name + "_runs.csv";
            write_file(fs::path(cfg.out_dir) / runs_name, runs_csv(out));
            files.push_back(runs_name);
        }
        if (cfg.emit_traces) {
            for (const RunRecord& rec : out.runs) {
                for (size_t a = 0; a < scenario.algorithms.size(); ++a) {
                    std::string trace_name = scenario.name + "_trace_run" +
                                             std::to_string(rec.run_index) + "_" +
                                             scenario.algorithms[a].column_id() + ".csv";
                    write_file(fs::path(cfg.out_dir) / trace_name, trace_csv(rec.results[a]));
                    files.push_back(trace_name);
                }
            }
        }
        diagnostics = out.stats.diagnostics;
    }
    std::string manifest_name = scenario.name + "_manifest.json";
    write_file(fs::path(cfg.out_dir) / manifest_name,
               manifest_json(scenario, cfg, files, diagnostics));
    files.push_back(manifest_name);
    for (const std::string& f : files) std::cout << cfg.out_dir << "/" << f << "\n";
    return 0;
}

int cmd_fit_sc(const std::string& panel_path, const GlobalArgs& args) {
    SimConfig cfg = effective_config(args);
    std::ifstream in(panel_path);
    if (!in) throw std::invalid_argument("cannot open panel '" + panel_path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    PanelData panel = panel_from_csv(ss.str());

    ScVariant variant = args.sc_variant.empty() ? ScVariant::conv : parse_variant(args.sc_variant);
    PgdOptions opts{cfg.sc_pgd_tol, cfg.sc_pgd_max_iter, 100};
    ScEstimator est = fit_estimator(panel, variant, opts);

    fs::create_directories(cfg.out_dir);
    std::string name = std::string("estimator_") + variant_name(variant) + ".csv";
    write_file(fs::path(cfg.out_dir) / name, estimator_csv(est));
    std::cout << cfg.out_dir << "/" << name << "\n";
    return 0;
}

int cmd_gen_net(const GlobalArgs& args) {
    SimConfig cfg = effective_config(args);
    Geometry geom = generate_topology(cfg, cfg.seed);
    NetworkInstance net = build_gains(geom, cfg, cfg.seed);
    fs::create_directories(cfg.out_dir);
    write_file(fs::path(cfg.out_dir) / "topology.csv", topology_csv(geom));
    write_file(fs::path(cfg.out_dir) / "gains.csv", gains_csv(net));
    std::cout << cfg.out_dir << "/topology.csv\n" << cfg.out_dir << "/gains.csv\n";
    return 0;
}

int cmd_validate_config(const GlobalArgs& args) {
    effective_config(args);
    std::cout << "config ok\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"WMMSE / SC-WMMSE power-allocation simulator"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalArgs args;
    app.add_option("--config", args.config_path, "config file (JSON, // comments allowed)");
    auto* seed_opt = app.add_option("--seed", args.seed, "seed base for all randomness");
    app.add_option("--runs", args.runs, "Monte-Carlo runs (overrides scenario/config)");
    app.add_option("--iterations", args.iterations, "iterations per run (overrides)");
    app.add_option("--out", args.out_dir, "output directory");
    app.add_option("--algorithms", args.algorithms,
                   "comma list: wmmse,wmmse_local,wmmse_sc,wmmse_sc_uncons,wmmse_center,"
                   "wmmse_random");
    app.add_option("--sc-variant", args.sc_variant, "conv|free|center|dirich");

    std::string scenario_name;
    auto* sc_cmd = app.add_subcommand("scenario", "run a builtin or file-defined scenario");
    sc_cmd->add_option("name", scenario_name, "builtin name or scenario JSON path")->required();

    std::string panel_path;
    auto* fit_cmd = app.add_subcommand("fit-sc", "train estimators from a panel CSV");
    fit_cmd->add_option("panel", panel_path, "panel CSV path")->required();

    auto* gen_cmd = app.add_subcommand("gen-net", "dump a topology / gain instance");
    auto* val_cmd = app.add_subcommand("validate-config", "validate the config and exit");

    CLI11_PARSE(app, argc, argv);
    args.seed_set = seed_opt->count() > 0;

    try {
        if (sc_cmd->parsed()) return cmd_scenario(scenario_name, args);
        if (fit_cmd->parsed()) return cmd_fit_sc(panel_path, args);
        if (gen_cmd->parsed()) return cmd_gen_net(args);
        if (val_cmd->parsed()) return cmd_validate_config(args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
