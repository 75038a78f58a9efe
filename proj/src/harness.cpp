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

#include "scwmmse/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "scwmmse/latentnet.hpp"
#include "scwmmse/netgen.hpp"

namespace scwmmse {

using nlohmann::json;

std::string AlgorithmSpec::column_id() const {
    switch (kind) {
        case Kind::wmmse: return "wmmse";
        case Kind::wmmse_local: return "wmmse_local";
        case Kind::sc:
            switch (sc_variant) {
                case ScVariant::conv: return "wmmse_sc";
                case ScVariant::free_: return "wmmse_sc_uncons";
                case ScVariant::center: return "wmmse_center";
                case ScVariant::dirich: return "wmmse_random";
            }
    }
    return "?";
}

AlgorithmSpec AlgorithmSpec::parse(const std::string& id) {
    if (id == "wmmse") return {Kind::wmmse, ScVariant::conv};
    if (id == "wmmse_local") return {Kind::wmmse_local, ScVariant::conv};
    if (id == "wmmse_sc") return {Kind::sc, ScVariant::conv};
    if (id == "wmmse_sc_uncons") return {Kind::sc, ScVariant::free_};
    if (id == "wmmse_center") return {Kind::sc, ScVariant::center};
    if (id == "wmmse_random") return {Kind::sc, ScVariant::dirich};
    throw std::invalid_argument("unknown algorithm '" + id + "'");
}

std::pair<double, double> confidence_interval(std::span<const double> samples, double level) {
    double z;
    if (level == 0.90)
        z = 1.6449;
    else if (level == 0.99)
        z = 2.5758;
    else
        throw std::invalid_argument("confidence_interval: level must be 0.90 or 0.99");
    const int n = static_cast<int>(samples.size());
    if (n == 0) throw std::invalid_argument("confidence_interval: empty sample");
    double mean = 0.0;
    for (double s : samples) mean += s;
    mean /= n;
    if (n == 1) return {mean, 0.0};
    double ss = 0.0;
    for (double s : samples) ss += (s - mean) * (s - mean);
    double sd = std::sqrt(ss / (n - 1));
    return {mean, z * sd / std::sqrt(static_cast<double>(n))};
}

double per_link_throughput(std::span<const double> trajectory, int k_plus) {
    if (trajectory.empty() || k_plus < 1)
        throw std::invalid_argument("per_link_throughput: empty trajectory or k_plus < 1");
    double mean = 0.0;
    for (double r : trajectory) mean += r;
    return mean / trajectory.size() / k_plus;
}

namespace {

void validate_scenario(const Scenario& s) {
    if (s.runs < 1 || s.iterations < 1 || s.k_plus < 1)
        throw std::invalid_argument("scenario: runs, iterations and k_plus must be >= 1");
    if (s.k_minus_train < 0 || s.k_minus_infer < 0)
        throw std::invalid_argument("scenario: latent counts must be >= 0");
    if (s.algorithms.empty()) throw std::invalid_argument("scenario: no algorithms");
    if (s.ci_level != 0.90 && s.ci_level != 0.99)
        throw std::invalid_argument("scenario: ci_level must be 0.90 or 0.99");
    bool any_sc = false;
    for (const AlgorithmSpec& a : s.algorithms)
        if (a.kind == AlgorithmSpec::Kind::sc) any_sc = true;
    if (any_sc && s.k_plus < 2)
        throw std::invalid_argument("scenario: SC algorithms need k_plus >= 2 (at least 1 donor)");
}

AlgoRunResult execute_algorithm(const NetworkInstance& net, const AlgorithmSpec& spec,
                                const std::map<ScVariant, ScEstimator>& estimators,
                                const LatentPolicy& infer_policy, const std::vector<double>& v0,
                                const std::vector<std::vector<double>>& jitter_rows,
                                const Scenario& scenario, const SimConfig& cfg,
                                std::uint64_t run_seed) {
    const int t_total = scenario.iterations;
    const int k_plus = net.num_known;
    const bool is_sc = spec.kind == AlgorithmSpec::Kind::sc;
    const EtaMode mode =
        spec.kind == AlgorithmSpec::Kind::wmmse_local ? EtaMode::local_only : EtaMode::observed;

    AlgoRunResult out;
    out.rate_trajectory.resize(t_total);

    ScStreams streams;
    const ScEstimator* estimator = nullptr;
    EpsilonSchedule schedule{cfg.epsilon_a, cfg.epsilon_b, t_total};
    if (is_sc) {
        streams = make_sc_streams(k_plus, derive_seed(run_seed, stream_tag::branch),
                                  derive_seed(run_seed, stream_tag::dirichlet));
        estimator = &estimators.at(spec.sc_variant);
        out.counterfactual_counts.assign(k_plus, 0);
    }

    std::vector<double> p(k_plus);
    std::vector<double> q_full(net.num_latent, 0.0);
    std::vector<int> cf_links;

    auto set_power = [&](const WmmseState& state) {
        for (int k = 0; k < k_plus; ++k) p[k] = state.v[k] * state.v[k];
    };
    auto observe_at = [&](int t) {
        LatentPowerVector q = step_policy(infer_policy, p, jitter_rows[t]);
        std::fill(q_full.begin(), q_full.end(), 0.0);
        std::copy(q.begin(), q.end(), q_full.begin());
        return observe_interference(net, p, q_full);
    };
    auto record = [&](int t) {
        double rate = cfg.bandwidth_hz * weighted_sum_rate(net, p, q_full);
        out.rate_trajectory[t] = rate;
        if (cfg.emit_traces) out.trace.push_back({t, rate, p, cf_links});
    };

    // Iteration 0: draw, observe, u/w init pass; the recorded point is the
    // initial power allocation.
    std::vector<double> v_init = v0;
    for (int k = 0; k < k_plus; ++k) p[k] = v_init[k] * v_init[k];
    InterferenceObservation obs = observe_at(0);
    WmmseState state = init_state(net, std::move(v_init), obs, mode);
    record(0);

    for (int t = 1; t < t_total; ++t) {
        set_power(state);
        obs = observe_at(t);
        cf_links.clear();
        if (is_sc) {
            sc_wmmse_sweep(net, state, obs, *estimator, epsilon(schedule, t), streams,
                           &out.counterfactual_counts, &cf_links);
        } else {
            wmmse_sweep(net, state, obs, mode);
        }
        set_power(state);
        record(t);
    }

    set_power(state);
    out.final_power = p;
    return out;
}

RunRecord execute_run(const Scenario& scenario, const SimConfig& cfg, int run_index) {
    RunRecord rec;
    rec.run_index = run_index;
    rec.seed = scenario.seed_base ^ static_cast<std::uint64_t>(run_index);

    const int m_geom = std::max(scenario.k_minus_train, scenario.k_minus_infer);
    SimConfig net_cfg = cfg;
    net_cfg.k_plus = scenario.k_plus;
    net_cfg.k_minus = m_geom;

    Geometry geom = generate_topology(net_cfg, rec.seed);
    NetworkInstance net = build_gains(geom, net_cfg, rec.seed, ExecPolicy::serial);

    Rng z_rng(derive_seed(rec.seed, stream_tag::latent_mixing));
    LatentPolicy z_full = make_latent_policy(m_geom, scenario.k_plus, cfg.latent_q_max_w,
                                             cfg.latent_jitter, z_rng);

    // Offline training stage: panel under randomized powers, one estimator
    // per variant the algorithm set needs.
    std::map<ScVariant, ScEstimator> estimators;
    bool any_sc = false;
    for (const AlgorithmSpec& a : scenario.algorithms)
        if (a.kind == AlgorithmSpec::Kind::sc) any_sc = true;
    if (any_sc) {
        LatentPolicy train_policy = truncate_policy(z_full, scenario.k_minus_train);
        PanelData panel = collect_panel(net, train_policy, cfg.panel_rows, rec.seed);
        PgdOptions opts{cfg.sc_pgd_tol, cfg.sc_pgd_max_iter, 100};
        for (const AlgorithmSpec& a : scenario.algorithms) {
            if (a.kind != AlgorithmSpec::Kind::sc) continue;
            if (!estimators.count(a.sc_variant))
                estimators.emplace(a.sc_variant,
                                   fit_estimator(panel, a.sc_variant, opts, ExecPolicy::serial));
        }
    }

    // Inference stage: shared initial amplitudes and shared jitter
    // realizations; algorithms differ only by their update rules.
    LatentPolicy infer_policy = truncate_policy(z_full, scenario.k_minus_infer);
    Rng init_rng(derive_seed(rec.seed, stream_tag::init));
    std::vector<double> v0 = draw_initial_amplitudes(net, init_rng);

    Rng jitter_rng(derive_seed(rec.seed, stream_tag::jitter));
    std::vector<std::vector<double>> jitter_rows(scenario.iterations);
    for (auto& row : jitter_rows) {
        row.resize(scenario.k_minus_infer);
        for (double& x : row)
            x = cfg.latent_jitter > 0.0 ? jitter_rng.uniform(-cfg.latent_jitter, cfg.latent_jitter)
                                        : 0.0;
    }

    rec.results.reserve(scenario.algorithms.size());
    for (const AlgorithmSpec& spec : scenario.algorithms)
        rec.results.push_back(execute_algorithm(net, spec, estimators, infer_policy, v0,
                                                jitter_rows, scenario, cfg, rec.seed));
    return rec;
}

json scenario_json(const Scenario& s) {
    std::vector<std::string> algs;
    for (const AlgorithmSpec& a : s.algorithms) algs.push_back(a.column_id());
    return json{{"name", s.name},
                {"algorithms", algs},
                {"k_plus", s.k_plus},
                {"k_minus_train", s.k_minus_train},
                {"k_minus_infer", s.k_minus_infer},
                {"iterations", s.iterations},
                {"runs", s.runs},
                {"seed_base", s.seed_base},
                {"ci_level", s.ci_level},
                {"sweep_links", s.sweep_links}};
}

}  // namespace

ScenarioStats aggregate_runs(const Scenario& scenario, std::vector<RunRecord>& runs) {
    const int n_alg = static_cast<int>(scenario.algorithms.size());
    for (RunRecord& rec : runs) {
        for (int a = 0; a < n_alg && !rec.excluded; ++a) {
            const AlgoRunResult& res = rec.results[a];
            for (int t = 0; t < static_cast<int>(res.rate_trajectory.size()); ++t) {
                if (!std::isfinite(res.rate_trajectory[t])) {
                    rec.excluded = true;
                    std::ostringstream msg;
                    msg << "run " << rec.run_index << " (seed " << rec.seed
                        << "): non-finite sum rate in " << scenario.algorithms[a].column_id()
                        << " at iteration " << t;
                    rec.diagnostic = msg.str();
                    break;
                }
            }
        }
    }

    ScenarioStats stats;
    stats.mean.assign(n_alg, std::vector<double>(scenario.iterations, 0.0));
    stats.ci.assign(n_alg, std::vector<double>(scenario.iterations, 0.0));
    std::vector<const RunRecord*> included;
    for (const RunRecord& rec : runs) {
        if (rec.excluded) {
            stats.diagnostics.push_back(rec.diagnostic);
            std::fprintf(stderr, "[scwmmse] excluded %s\n", rec.diagnostic.c_str());
        } else {
            included.push_back(&rec);
        }
    }
    stats.included_runs = static_cast<int>(included.size());
    if (included.empty()) return stats;

    std::vector<double> samples(included.size());
    for (int a = 0; a < n_alg; ++a) {
        for (int t = 0; t < scenario.iterations; ++t) {
            for (size_t r = 0; r < included.size(); ++r)
                samples[r] = included[r]->results[a].rate_trajectory[t];
            auto [mean, hw] = confidence_interval(samples, scenario.ci_level);
            stats.mean[a][t] = mean;
            stats.ci[a][t] = hw;
        }
    }
    return stats;
}

ScenarioOutput run_scenario(const Scenario& scenario, const SimConfig& cfg, ExecPolicy policy) {
    validate_scenario(scenario);
    ScenarioOutput out;
    out.scenario = scenario;
    out.runs.resize(scenario.runs);

    if (policy == ExecPolicy::parallel && cfg.parallel_runs) {
#pragma omp parallel for schedule(dynamic)
        for (int r = 0; r < scenario.runs; ++r) out.runs[r] = execute_run(scenario, cfg, r);
    } else {
        for (int r = 0; r < scenario.runs; ++r) out.runs[r] = execute_run(scenario, cfg, r);
    }

    out.stats = aggregate_runs(scenario, out.runs);
    return out;
}

SweepOutput run_sweep(const Scenario& scenario, const SimConfig& cfg, ExecPolicy policy) {
    if (scenario.sweep_links.empty())
        throw std::invalid_argument("run_sweep: scenario has no sweep_links");
    SweepOutput out;
    out.scenario = scenario;
    for (int links : scenario.sweep_links) {
        Scenario sub = scenario;
        sub.k_plus = links;
        sub.sweep_links.clear();
        ScenarioOutput point = run_scenario(sub, cfg, policy);
        SweepRow row;
        row.links = links;
        std::vector<double> samples;
        for (size_t a = 0; a < scenario.algorithms.size(); ++a) {
            samples.clear();
            for (const RunRecord& rec : point.runs)
                if (!rec.excluded)
                    samples.push_back(
                        per_link_throughput(rec.results[a].rate_trajectory, sub.k_plus));
            auto [mean, hw] = confidence_interval(samples, scenario.ci_level);
            row.mean.push_back(mean);
            row.ci.push_back(hw);
        }
        for (const std::string& d : point.stats.diagnostics)
            out.diagnostics.push_back("links=" + std::to_string(links) + ": " + d);
        out.rows.push_back(std::move(row));
    }
    return out;
}

std::vector<Scenario> builtin_scenarios() {
    const std::vector<AlgorithmSpec> trio = {AlgorithmSpec::parse("wmmse"),
                                             AlgorithmSpec::parse("wmmse_local"),
                                             AlgorithmSpec::parse("wmmse_sc")};
    const std::vector<AlgorithmSpec> ablation = {
        AlgorithmSpec::parse("wmmse"), AlgorithmSpec::parse("wmmse_sc_uncons"),
        AlgorithmSpec::parse("wmmse_sc"), AlgorithmSpec::parse("wmmse_center"),
        AlgorithmSpec::parse("wmmse_random")};

    std::vector<Scenario> list;
    for (int m : {20, 30, 40, 50}) {
        Scenario s;
        s.name = "fig1_k" + std::to_string(m);
        s.algorithms = trio;
        s.k_plus = 50;
        s.k_minus_train = s.k_minus_infer = m;
        s.iterations = 500;
        s.runs = 50;
        list.push_back(std::move(s));
    }
    {
        Scenario s;
        s.name = "fig2_zero-zero";
        s.algorithms = trio;
        s.k_plus = 50;
        s.k_minus_train = 0;
        s.k_minus_infer = 0;
        s.iterations = 500;
        s.runs = 50;
        list.push_back(std::move(s));
    }
    {
        Scenario s;
        s.name = "fig2_dep-zero";
        s.algorithms = trio;
        s.k_plus = 50;
        s.k_minus_train = 50;
        s.k_minus_infer = 0;
        s.iterations = 500;
        s.runs = 50;
        list.push_back(std::move(s));
    }
    {
        Scenario s;
        s.name = "fig2_zero-dep";
        s.algorithms = trio;
        s.k_plus = 50;
        s.k_minus_train = 0;
        s.k_minus_infer = 50;
        s.iterations = 500;
        s.runs = 50;
        list.push_back(std::move(s));
    }
    {
        Scenario s;
        s.name = "fig3_sweep";
        s.algorithms = trio;
        s.k_plus = 50;
        s.k_minus_train = s.k_minus_infer = 50;
        s.iterations = 500;
        s.runs = 50;
        s.ci_level = 0.99;
        s.sweep_links = {25, 50, 100, 150, 200};
        list.push_back(std::move(s));
    }
    {
        Scenario s;
        s.name = "fig4_ablation";
        s.algorithms = ablation;
        s.k_plus = 50;
        s.k_minus_train = s.k_minus_infer = 50;
        s.iterations = 500;
        s.runs = 50;
        list.push_back(std::move(s));
    }
    return list;
}

std::optional<Scenario> find_builtin(const std::string& name) {
    for (Scenario& s : builtin_scenarios())
        if (s.name == name) return std::move(s);
    return std::nullopt;
}

Scenario apply_overrides(Scenario scenario, const SimConfig& cfg) {
    if (cfg.runs > 0) scenario.runs = cfg.runs;
    if (cfg.iterations > 0) scenario.iterations = cfg.iterations;
    if (cfg.k_plus_override > 0) scenario.k_plus = cfg.k_plus_override;
    if (cfg.k_minus_override > 0) {
        // Only nonzero stages are rescaled: a zero latent count is part of
        // the scenario's identity (a stage without a latent sub-network).
        if (scenario.k_minus_train > 0) scenario.k_minus_train = cfg.k_minus_override;
        if (scenario.k_minus_infer > 0) scenario.k_minus_infer = cfg.k_minus_override;
    }
    scenario.seed_base = cfg.seed;
    return scenario;
}

Scenario scenario_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("scenario: parse error: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("scenario: top level must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        static const char* allowed[] = {"name",       "algorithms", "k_plus",
                                        "k_minus_train", "k_minus_infer", "iterations",
                                        "runs",       "ci_level",   "sweep_links"};
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) known = true;
        if (!known) throw std::invalid_argument("scenario: unknown key '" + it.key() + "'");
    }
    Scenario s;
    if (!j.contains("name") || !j.contains("algorithms"))
        throw std::invalid_argument("scenario: 'name' and 'algorithms' are required");
    s.name = j.at("name").get<std::string>();
    for (const auto& id : j.at("algorithms"))
        s.algorithms.push_back(AlgorithmSpec::parse(id.get<std::string>()));
    if (j.contains("k_plus")) s.k_plus = j.at("k_plus").get<int>();
    if (j.contains("k_minus_train")) s.k_minus_train = j.at("k_minus_train").get<int>();
    if (j.contains("k_minus_infer")) s.k_minus_infer = j.at("k_minus_infer").get<int>();
    if (j.contains("iterations")) s.iterations = j.at("iterations").get<int>();
    if (j.contains("runs")) s.runs = j.at("runs").get<int>();
    if (j.contains("ci_level")) s.ci_level = j.at("ci_level").get<double>();
    if (j.contains("sweep_links")) s.sweep_links = j.at("sweep_links").get<std::vector<int>>();
    validate_scenario(s);
    return s;
}

std::string scenario_stats_csv(const ScenarioOutput& out) {
    std::ostringstream os;
    os << "iteration";
    for (const AlgorithmSpec& a : out.scenario.algorithms)
        os << ',' << a.column_id() << ',' << a.column_id() << "_ci";
    os << '\n';
    for (int t = 0; t < out.scenario.iterations; ++t) {
        os << t;
        for (size_t a = 0; a < out.scenario.algorithms.size(); ++a)
            os << ',' << format_double(out.stats.mean[a][t]) << ','
               << format_double(out.stats.ci[a][t]);
        os << '\n';
    }
    return os.str();
}

std::string runs_csv(const ScenarioOutput& out) {
    std::ostringstream os;
    os << "run,excluded,iteration";
    for (const AlgorithmSpec& a : out.scenario.algorithms) os << ',' << a.column_id();
    os << '\n';
    for (const RunRecord& rec : out.runs) {
        for (int t = 0; t < out.scenario.iterations; ++t) {
            os << rec.run_index << ',' << (rec.excluded ? 1 : 0) << ',' << t;
            for (const AlgoRunResult& res : rec.results)
                os << ',' << format_double(res.rate_trajectory[t]);
            os << '\n';
        }
    }
    return os.str();
}

std::string sweep_csv(const SweepOutput& out) {
    std::ostringstream os;
    os << "links";
    for (const AlgorithmSpec& a : out.scenario.algorithms)
        os << ',' << a.column_id() << "_mean," << a.column_id() << "_ci";
    os << '\n';
    for (const SweepRow& row : out.rows) {
        os << row.links;
        for (size_t a = 0; a < out.scenario.algorithms.size(); ++a)
            os << ',' << format_double(row.mean[a]) << ',' << format_double(row.ci[a]);
        os << '\n';
    }
    return os.str();
}

std::string trace_csv(const AlgoRunResult& result) {
    std::ostringstream os;
    const int k_plus = result.final_power.empty() && !result.trace.empty()
                           ? static_cast<int>(result.trace.front().power.size())
                           : static_cast<int>(result.final_power.size());
    os << "iteration,sum_rate";
    for (int k = 0; k < k_plus; ++k) os << ",p" << k;
    os << ",cf_links\n";
    for (const TraceRow& row : result.trace) {
        os << row.iteration << ',' << format_double(row.sum_rate);
        for (double p : row.power) os << ',' << format_double(p);
        os << ',';
        for (size_t i = 0; i < row.counterfactual.size(); ++i) {
            if (i) os << ';';
            os << row.counterfactual[i];
        }
        os << '\n';
    }
    return os.str();
}

std::string manifest_json(const Scenario& scenario, const SimConfig& cfg,
                          const std::vector<std::string>& files,
                          const std::vector<std::string>& diagnostics) {
    std::uint64_t hash = fnv1a64(cfg.canonical_json() + "|" + scenario_json(scenario).dump());
    char hash_hex[19];
    std::snprintf(hash_hex, sizeof(hash_hex), "0x%016llx",
                  static_cast<unsigned long long>(hash));
    std::vector<std::string> algs;
    for (const AlgorithmSpec& a : scenario.algorithms) algs.push_back(a.column_id());
    json j{{"scenario", scenario.name},
           {"version", kVersion},
           {"seed_base", scenario.seed_base},
           {"config_hash", hash_hex},
           {"ci_level", scenario.ci_level},
           {"algorithms", algs},
           {"files", files},
           {"excluded_runs", diagnostics}};
    return j.dump(2) + "\n";
}

}  // namespace scwmmse
