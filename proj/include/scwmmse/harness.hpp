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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scwmmse/config.hpp"
#include "scwmmse/scwmmse.hpp"

namespace scwmmse {

/// One algorithm column of a scenario. Column ids follow the output CSV
/// naming: wmmse, wmmse_local, wmmse_sc (conv), wmmse_sc_uncons (free),
/// wmmse_center, wmmse_random (dirich).
struct AlgorithmSpec {
    enum class Kind { wmmse, wmmse_local, sc };
    Kind kind = Kind::wmmse;
    ScVariant sc_variant = ScVariant::conv;

    std::string column_id() const;
    /// Parses a column id; throws std::invalid_argument on unknown names.
    static AlgorithmSpec parse(const std::string& id);
};

/// An experiment family instance: which algorithms run, the network sizes
/// of the training and inference stages, and the Monte-Carlo budget.
struct Scenario {
    std::string name;
    std::vector<AlgorithmSpec> algorithms;
    int k_plus = 20;
    int k_minus_train = 20;
    int k_minus_infer = 20;
    int iterations = 200;
    int runs = 20;
    std::uint64_t seed_base = 1;
    double ci_level = 0.90;
    /// Nonempty = scalability sweep: run once per K+ value, report per-link
    /// throughput instead of trajectories.
    std::vector<int> sweep_links;
};

/// Per-iteration trace of one algorithm in one run (kept only when
/// config.emit_traces is set).
struct TraceRow {
    int iteration = 0;
    double sum_rate = 0.0;             ///< nats/s
    std::vector<double> power;         ///< per known link, watts
    std::vector<int> counterfactual;   ///< links that took the counterfactual branch
};

struct AlgoRunResult {
    std::vector<double> rate_trajectory;      ///< nats/s, length = iterations
    std::vector<double> final_power;          ///< watts per known link
    std::vector<long> counterfactual_counts;  ///< per link; empty for non-SC algorithms
    std::vector<TraceRow> trace;
};

struct RunRecord {
    int run_index = 0;
    std::uint64_t seed = 0;
    bool excluded = false;
    std::string diagnostic;
    std::vector<AlgoRunResult> results;  ///< parallel to Scenario::algorithms
};

struct ScenarioStats {
    std::vector<std::vector<double>> mean;  ///< [algorithm][iteration]
    std::vector<std::vector<double>> ci;    ///< CI half-width, same shape
    int included_runs = 0;
    std::vector<std::string> diagnostics;   ///< one entry per excluded run
};

struct ScenarioOutput {
    Scenario scenario;
    std::vector<RunRecord> runs;
    ScenarioStats stats;
};

/// Mean and normal-approximation CI half-width z * s / sqrt(n) with the
/// sample standard deviation s (n - 1 denominator). Level must be 0.90
/// (z = 1.6449) or 0.99 (z = 2.5758); n = 1 yields half-width 0.
std::pair<double, double> confidence_interval(std::span<const double> samples, double level);

/// Mean of a sum-rate trajectory divided by the link count: the average
/// per-link throughput of one run.
double per_link_throughput(std::span<const double> trajectory, int k_plus);

/// Executes every run of the scenario (parallel lane: OpenMP over runs;
/// results are bitwise independent of the thread count because each run
/// derives all of its streams from seed_base ^ run_index). All algorithms
/// of a run share the channel instance, the latent mixing matrix, the
/// jitter realizations and the initial amplitudes, so columns differ only
/// by their update rules.
ScenarioOutput run_scenario(const Scenario& scenario, const SimConfig& cfg,
                            ExecPolicy policy = ExecPolicy::parallel);

/// Scans trajectories for non-finite values, flags offending runs as
/// excluded with a diagnostic (never silently dropped), and aggregates the
/// rest into per-iteration means and CIs.
ScenarioStats aggregate_runs(const Scenario& scenario, std::vector<RunRecord>& runs);

/// Scalability sweep output: one row per K+ value with per-link-throughput
/// mean and CI per algorithm.
struct SweepRow {
    int links = 0;
    std::vector<double> mean;
    std::vector<double> ci;
};

struct SweepOutput {
    Scenario scenario;
    std::vector<SweepRow> rows;
    std::vector<std::string> diagnostics;
};

SweepOutput run_sweep(const Scenario& scenario, const SimConfig& cfg,
                      ExecPolicy policy = ExecPolicy::parallel);

/// The shipped experiment families: fig1_k{20,30,40,50} (convergence under
/// an increasingly dense latent set), fig2_{zero-zero,dep-zero,zero-dep}
/// (latent set appearing/disappearing between training and inference),
/// fig3_sweep (per-link throughput vs K+), fig4_ablation (estimator
/// variants vs baseline).
std::vector<Scenario> builtin_scenarios();

/// Looks up a builtin by name; nullopt if absent.
std::optional<Scenario> find_builtin(const std::string& name);

/// Applies config overrides: runs/iterations and the harness k overrides
/// (each when > 0), and seed_base (always taken from cfg.seed).
Scenario apply_overrides(Scenario scenario, const SimConfig& cfg);

/// File-defined scenario: JSON with keys name, algorithms, k_plus,
/// k_minus_train, k_minus_infer, iterations, runs, ci_level, sweep_links.
Scenario scenario_from_json(const std::string& json_text);

// ---- output documents ------------------------------------------------

/// Per-iteration stats: iteration,<alg>,<alg>_ci per algorithm.
std::string scenario_stats_csv(const ScenarioOutput& out);

/// Raw per-run trajectories: run,excluded,iteration,<alg> columns.
std::string runs_csv(const ScenarioOutput& out);

/// Scalability table: links,<alg>_mean,<alg>_ci per algorithm.
std::string sweep_csv(const SweepOutput& out);

/// Per-run, per-algorithm trace: iteration,sum_rate,p0..p{K-1},cf_links.
std::string trace_csv(const AlgoRunResult& result);

/// Reproducibility manifest: config hash, seed base, version, emitted
/// files, exclusion diagnostics. Deterministic (no timestamps).
std::string manifest_json(const Scenario& scenario, const SimConfig& cfg,
                          const std::vector<std::string>& files,
                          const std::vector<std::string>& diagnostics);

inline constexpr const char* kVersion = "0.1.0";

}  // namespace scwmmse
