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

#include "scwmmse/synthctl.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace scwmmse {

namespace {

void require_finite(const PanelData& panel) {
    for (double v : panel.values)
        if (!std::isfinite(v)) throw std::invalid_argument("panel contains non-finite values");
}

/// Donor matrix (all columns but k) and target column of the panel.
struct DonorView {
    const PanelData& panel;
    int k;
    int donors;

    double donor(int r, int d) const { return panel.at(r, d < k ? d : d + 1); }
    double target(int r) const { return panel.at(r, k); }
};

double residual_rms_of(const DonorView& view, std::span<const double> beta) {
    double ss = 0.0;
    for (int r = 0; r < view.panel.rows; ++r) {
        double fit = 0.0;
        for (int d = 0; d < view.donors; ++d) fit += view.donor(r, d) * beta[d];
        double diff = view.target(r) - fit;
        ss += diff * diff;
    }
    return std::sqrt(ss / view.panel.rows);
}

/// Gram matrix G = C^T C and moment vector b = C^T x of the donor system.
void build_normal_system(const DonorView& view, std::vector<double>& gram,
                         std::vector<double>& moment) {
    const int nd = view.donors;
    gram.assign(static_cast<size_t>(nd) * nd, 0.0);
    moment.assign(nd, 0.0);
    for (int r = 0; r < view.panel.rows; ++r) {
        for (int a = 0; a < nd; ++a) {
            const double ca = view.donor(r, a);
            moment[a] += ca * view.target(r);
            for (int b = a; b < nd; ++b) gram[static_cast<size_t>(a) * nd + b] += ca * view.donor(r, b);
        }
    }
    for (int a = 0; a < nd; ++a)
        for (int b = 0; b < a; ++b)
            gram[static_cast<size_t>(a) * nd + b] = gram[static_cast<size_t>(b) * nd + a];
}

double largest_eigenvalue(const std::vector<double>& gram, int n, int steps) {
    std::vector<double> v(n), y(n);
    for (int i = 0; i < n; ++i) v[i] = 1.0 + 0.1 * (i % 7);
    double lambda = 0.0;
    for (int s = 0; s < steps; ++s) {
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j) acc += gram[static_cast<size_t>(i) * n + j] * v[j];
            y[i] = acc;
        }
        double vy = std::inner_product(v.begin(), v.end(), y.begin(), 0.0);
        double vv = std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
        if (vv == 0.0) return 0.0;
        lambda = vy / vv;
        double norm = std::sqrt(std::inner_product(y.begin(), y.end(), y.begin(), 0.0));
        if (norm == 0.0) return 0.0;
        for (int i = 0; i < n; ++i) v[i] = y[i] / norm;
    }
    return lambda;
}

/// In-place Cholesky solve of (A) x = b for SPD A (row-major n x n).
std::vector<double> cholesky_solve(std::vector<double> a, std::vector<double> b, int n) {
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = a[static_cast<size_t>(i) * n + j];
            for (int m = 0; m < j; ++m)
                sum -= a[static_cast<size_t>(i) * n + m] * a[static_cast<size_t>(j) * n + m];
            if (i == j) {
                if (sum <= 0.0) throw std::runtime_error("cholesky: matrix not positive definite");
                a[static_cast<size_t>(i) * n + j] = std::sqrt(sum);
            } else {
                a[static_cast<size_t>(i) * n + j] = sum / a[static_cast<size_t>(j) * n + j];
            }
        }
    }
    for (int i = 0; i < n; ++i) {  // forward
        double sum = b[i];
        for (int m = 0; m < i; ++m) sum -= a[static_cast<size_t>(i) * n + m] * b[m];
        b[i] = sum / a[static_cast<size_t>(i) * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {  // backward
        double sum = b[i];
        for (int m = i + 1; m < n; ++m) sum -= a[static_cast<size_t>(m) * n + i] * b[m];
        b[i] = sum / a[static_cast<size_t>(i) * n + i];
    }
    return b;
}

DonorView make_view(const PanelData& panel, int k) {
    if (panel.cols < 2) throw std::invalid_argument("fit: need at least 2 links (1 donor)");
    if (panel.rows < 1) throw std::invalid_argument("fit: empty panel");
    if (k < 0 || k >= panel.cols) throw std::invalid_argument("fit: link index out of range");
    require_finite(panel);
    return DonorView{panel, k, panel.cols - 1};
}

}  // namespace

const char* variant_name(ScVariant v) {
    switch (v) {
        case ScVariant::conv: return "conv";
        case ScVariant::free_: return "free";
        case ScVariant::center: return "center";
        case ScVariant::dirich: return "dirich";
    }
    return "?";
}

PanelData collect_panel(const NetworkInstance& net, const LatentPolicy& policy, int rows,
                        std::uint64_t seed, PanelLog* log) {
    if (rows < 1) throw std::invalid_argument("collect_panel: rows must be >= 1");
    PanelData panel;
    panel.rows = rows;
    panel.cols = net.num_known;
    panel.values.resize(static_cast<size_t>(rows) * net.num_known);

    Rng rng(derive_seed(seed, stream_tag::panel));
    std::vector<double> p(net.num_known);
    std::vector<double> q_full(net.num_latent, 0.0);
    for (int r = 0; r < rows; ++r) {
        for (int k = 0; k < net.num_known; ++k) p[k] = rng.uniform(0.0, net.max_power[k]);
        LatentPowerVector q = step_policy(policy, p, rng);
        std::fill(q_full.begin(), q_full.end(), 0.0);
        std::copy(q.begin(), q.end(), q_full.begin());
        InterferenceObservation obs = observe_interference(net, p, q_full);
        for (int k = 0; k < net.num_known; ++k) panel.at(r, k) = obs.total[k];
        if (log) {
            log->p.insert(log->p.end(), p.begin(), p.end());
            log->q.insert(log->q.end(), q_full.begin(), q_full.end());
        }
    }
    return panel;
}

namespace {

/// Shared core of the simplex projection; sorted_buf is scratch.
void project_simplex_into(std::span<const double> y, std::vector<double>& sorted_buf,
                          std::span<double> out) {
    const int n = static_cast<int>(y.size());
    sorted_buf.assign(y.begin(), y.end());
    std::sort(sorted_buf.begin(), sorted_buf.end(), std::greater<>());
    double running = 0.0;
    double tau = 0.0;
    for (int j = 0; j < n; ++j) {
        running += sorted_buf[j];
        double candidate = (running - 1.0) / (j + 1);
        if (sorted_buf[j] - candidate > 0.0) tau = candidate;
    }
    for (int i = 0; i < n; ++i) out[i] = std::max(y[i] - tau, 0.0);
}

}  // namespace

std::vector<double> project_simplex(std::span<const double> y) {
    std::vector<double> out(y.size()), scratch;
    project_simplex_into(y, scratch, out);
    return out;
}

FitResult fit_conv(const PanelData& panel, int k, const PgdOptions& opts) {
    DonorView view = make_view(panel, k);
    const int nd = view.donors;

    std::vector<double> gram, moment;
    build_normal_system(view, gram, moment);
    double x_sq = 0.0;
    for (int r = 0; r < panel.rows; ++r) x_sq += view.target(r) * view.target(r);
    const double c0 = 0.5 * x_sq;

    FitResult res;
    res.beta.assign(nd, 1.0 / nd);

    const double lip = largest_eigenvalue(gram, nd, opts.power_iter);
    if (lip <= 0.0) {  // all-zero donors: every simplex point is optimal
        res.residual_rms = residual_rms_of(view, res.beta);
        return res;
    }
    const double step = 1.0 / lip;

    // Objective floor below which the residual is numerically zero; stops
    // the loop on exact-hull panels where the relative test cannot fire.
    const double floor = 1e-24 * (c0 + 1e-300);
    double f_prev = std::numeric_limits<double>::infinity();
    std::vector<double> grad(nd), next(nd), scratch;
    for (int it = 0; it < opts.max_iter; ++it) {
        // One matvec per iteration: grad = G b - moment, and
        // f = 0.5 b'Gb - moment'b + c0 = 0.5 b'grad - 0.5 moment'b + c0.
        double bg = 0.0, bm = 0.0;
        for (int a = 0; a < nd; ++a) {
            double acc = -moment[a];
            const double* row = &gram[static_cast<size_t>(a) * nd];
            for (int j = 0; j < nd; ++j) acc += row[j] * res.beta[j];
            grad[a] = acc;
            bg += res.beta[a] * acc;
            bm += res.beta[a] * moment[a];
        }
        double f = 0.5 * bg - 0.5 * bm + c0;
        if (it > 0 && (std::fabs(f_prev - f) <= opts.tol * std::fabs(f_prev) || f <= floor)) break;
        f_prev = f;
        for (int a = 0; a < nd; ++a) next[a] = res.beta[a] - step * grad[a];
        project_simplex_into(next, scratch, res.beta);
        res.iterations = it + 1;
    }
    res.residual_rms = residual_rms_of(view, res.beta);
    return res;
}

FitResult fit_free(const PanelData& panel, int k) {
    DonorView view = make_view(panel, k);
    const int nd = view.donors;

    std::vector<double> gram, moment;
    build_normal_system(view, gram, moment);
    double max_diag = 0.0;
    for (int a = 0; a < nd; ++a)
        max_diag = std::max(max_diag, gram[static_cast<size_t>(a) * nd + a]);

    FitResult res;
    if (max_diag == 0.0) {  // all-zero donors
        res.beta.assign(nd, 0.0);
        res.residual_rms = residual_rms_of(view, res.beta);
        return res;
    }
    const double ridge = 1e-10 * max_diag;
    for (int a = 0; a < nd; ++a) gram[static_cast<size_t>(a) * nd + a] += ridge;
    res.beta = cholesky_solve(std::move(gram), std::move(moment), nd);
    res.residual_rms = residual_rms_of(view, res.beta);
    return res;
}

ScEstimator fit_estimator(const PanelData& panel, ScVariant variant, const PgdOptions& opts,
                          ExecPolicy policy) {
    require_finite(panel);
    if (panel.cols < 2) throw std::invalid_argument("fit_estimator: need at least 2 links");

    ScEstimator est;
    est.variant = variant;
    est.num_links = panel.cols;
    est.coefficients.resize(panel.cols);
    est.residual_rms.assign(panel.cols, std::numeric_limits<double>::quiet_NaN());

    auto fit_one = [&](int k) {
        switch (variant) {
            case ScVariant::conv: {
                FitResult r = fit_conv(panel, k, opts);
                est.coefficients[k] = std::move(r.beta);
                est.residual_rms[k] = r.residual_rms;
                break;
            }
            case ScVariant::free_: {
                FitResult r = fit_free(panel, k);
                est.coefficients[k] = std::move(r.beta);
                est.residual_rms[k] = r.residual_rms;
                break;
            }
            case ScVariant::center: {
                est.coefficients[k].assign(panel.cols - 1, 1.0 / (panel.cols - 1));
                est.residual_rms[k] =
                    residual_rms_of(DonorView{panel, k, panel.cols - 1}, est.coefficients[k]);
                break;
            }
            case ScVariant::dirich:
                break;  // coefficients drawn per use; no training residual
        }
    };

    if (policy == ExecPolicy::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int k = 0; k < panel.cols; ++k) fit_one(k);
    } else {
        for (int k = 0; k < panel.cols; ++k) fit_one(k);
    }
    return est;
}

double infer(const ScEstimator& est, int k, std::span<const double> mu, Rng* rng) {
    assert(k >= 0 && k < est.num_links);
    assert(static_cast<int>(mu.size()) == est.num_links - 1);
    if (est.variant == ScVariant::dirich) {
        if (!rng) throw std::invalid_argument("infer: dirich variant needs an rng stream");
        std::vector<double> nu = dirichlet_uniform(est.num_links - 1, *rng);
        return std::inner_product(nu.begin(), nu.end(), mu.begin(), 0.0);
    }
    const std::vector<double>& nu = est.coefficients[k];
    return std::inner_product(nu.begin(), nu.end(), mu.begin(), 0.0);
}

std::vector<double> dirichlet_uniform(int dim, Rng& rng) {
    std::vector<double> draw(dim);
    double sum = 0.0;
    for (double& d : draw) {
        d = -std::log(1.0 - rng.uniform01());  // Exp(1) = Gamma(1,1)
        sum += d;
    }
    for (double& d : draw) d /= sum;
    return draw;
}

std::string panel_csv(const PanelData& panel) {
    std::ostringstream out;
    for (int k = 0; k < panel.cols; ++k) {
        if (k) out << ',';
        out << k;
    }
    out << '\n';
    for (int r = 0; r < panel.rows; ++r) {
        for (int k = 0; k < panel.cols; ++k) {
            if (k) out << ',';
            out << format_double(panel.at(r, k));
        }
        out << '\n';
    }
    return out.str();
}

PanelData panel_from_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("panel_from_csv: empty input");
    PanelData panel;
    panel.cols = static_cast<int>(std::count(line.begin(), line.end(), ',')) + 1;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        int count = 0;
        while (std::getline(row, cell, ',')) {
            panel.values.push_back(std::stod(cell));
            ++count;
        }
        if (count != panel.cols) throw std::invalid_argument("panel_from_csv: ragged rows");
        ++panel.rows;
    }
    if (panel.rows < 1) throw std::invalid_argument("panel_from_csv: no data rows");
    return panel;
}

std::string estimator_csv(const ScEstimator& est) {
    std::ostringstream out;
    out << "# variant=" << variant_name(est.variant) << '\n';
    out << "link";
    for (int d = 0; d + 1 < est.num_links; ++d) out << ",nu" << d;
    out << ",residual_rms\n";
    for (int k = 0; k < est.num_links; ++k) {
        out << k;
        if (est.coefficients[k].empty()) {
            for (int d = 0; d + 1 < est.num_links; ++d) out << ',';
        } else {
            for (double c : est.coefficients[k]) out << ',' << format_double(c);
        }
        out << ',' << format_double(est.residual_rms[k]) << '\n';
    }
    return out.str();
}

}  // namespace scwmmse
