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

#include <span>
#include <string>
#include <vector>

#include "scwmmse/common.hpp"
#include "scwmmse/latentnet.hpp"

namespace scwmmse {

/// Panel of interference observations: L rows (repeated observations) over
/// the K known links (columns).
struct PanelData {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;  ///< row-major rows x cols

    double at(int r, int c) const { return values[static_cast<size_t>(r) * cols + c]; }
    double& at(int r, int c) { return values[static_cast<size_t>(r) * cols + c]; }
};

/// How the per-link donor coefficients are obtained.
///  conv   : simplex-constrained least squares (coefficients >= 0, sum 1)
///  free_  : unconstrained least squares
///  center : uniform coefficients, the centroid of the donor hull
///  dirich : resampled from a symmetric Dirichlet(1) at every use
enum class ScVariant { conv, free_, center, dirich };

const char* variant_name(ScVariant v);

struct ScEstimator {
    ScVariant variant = ScVariant::conv;
    int num_links = 0;
    /// coefficients[k] has num_links - 1 donor weights for link k (donor
    /// order: all links except k, ascending). Empty rows for dirich.
    std::vector<std::vector<double>> coefficients;
    std::vector<double> residual_rms;  ///< training RMS per link, watts
};

/// Per-row log of the draws behind a panel, for recomputation checks.
struct PanelLog {
    std::vector<double> p;  ///< row-major L x K
    std::vector<double> q;  ///< row-major L x num_latent
};

/// Builds an L-row panel: each row draws p uniformly on prod [0, p_max_k],
/// steps the latent policy with fresh jitter, and records the observed
/// totals I_k. Deterministic per seed.
PanelData collect_panel(const NetworkInstance& net, const LatentPolicy& policy, int rows,
                        std::uint64_t seed, PanelLog* log = nullptr);

/// Euclidean projection onto the probability simplex {b >= 0, sum b = 1}.
std::vector<double> project_simplex(std::span<const double> y);

struct PgdOptions {
    double tol = 1e-10;      ///< relative objective-change stop
    int max_iter = 100000;
    int power_iter = 100;    ///< steps to estimate the gradient Lipschitz constant
};

struct FitResult {
    std::vector<double> beta;
    double residual_rms = 0.0;
    int iterations = 0;
};

/// Simplex-constrained least squares for link k: projected gradient with
/// fixed step 1/L_max on 0.5 ||x_k - X_{-k} b||^2, exact simplex projection
/// after the final step. Throws std::invalid_argument on non-finite panels
/// or cols < 2.
FitResult fit_conv(const PanelData& panel, int k, const PgdOptions& opts = {});

/// Unconstrained least squares via normal equations; a ridge of
/// 1e-10 * max diag of the Gram matrix keeps rank-deficient panels solvable.
FitResult fit_free(const PanelData& panel, int k);

/// Fits every link of the panel with the given variant (center fills
/// uniform rows; dirich leaves coefficient rows empty). Per-link fits are
/// independent; the parallel lane runs them under OpenMP.
ScEstimator fit_estimator(const PanelData& panel, ScVariant variant, const PgdOptions& opts = {},
                          ExecPolicy policy = ExecPolicy::parallel);

/// Counterfactual estimate for link k from the donor observations mu
/// (length num_links - 1, same donor order as training). For the dirich
/// variant, rng must be non-null; coefficients are redrawn per call.
double infer(const ScEstimator& est, int k, std::span<const double> mu, Rng* rng = nullptr);

/// Symmetric Dirichlet(1) draw of the given dimension (uniform over the simplex).
std::vector<double> dirichlet_uniform(int dim, Rng& rng);

/// Panel CSV: header of link ids, one row per observation.
std::string panel_csv(const PanelData& panel);
PanelData panel_from_csv(const std::string& csv);

/// Estimator dump: one row per link with its donor coefficients and
/// training residual.
std::string estimator_csv(const ScEstimator& est);

}  // namespace scwmmse
