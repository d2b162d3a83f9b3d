// SPDX-License-Identifier: Apache-2.0
//
// holoest - channel estimation for holographic MIMO arrays with mutual coupling
// Copyright (C) 2026 The holoest authors
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

#ifndef HOLOEST_EXPERIMENTS_HPP
#define HOLOEST_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "holoest/channel_estimation.hpp"
#include "holoest/mutual_coupling.hpp"
#include "holoest/spatial_correlation.hpp"

namespace holoest
{
    enum class ScenarioKind
    {
        isotropic,
        cluster
    };

    std::string to_string(ScenarioKind kind);

    struct SweepConfig
    {
        UpaGeometry geometry{10, 10, 0.2, 0.2};
        ScenarioKind scenario = ScenarioKind::isotropic;
        std::optional<ClusterScenario> clusters; // required for the cluster scenario
        std::vector<double> snr_grid_db;
        std::vector<EstimatorKind> estimators = all_estimator_kinds();
        int mc_trials = 0;
        std::uint64_t base_seed = 2024;
        CouplingOptions coupling;
        double series_tol = 1e-12;
        QuadratureOptions quadrature;
        bool validation = false; // Monte Carlo cells beyond 5 standard errors throw
        int threads = 0;         // 0: HOLOEST_THREADS or the hardware count
    };

    /// The default SNR grid, -10 to 24 dB in 2 dB steps.
    std::vector<double> default_snr_grid();

    /// Everything derived from the configuration before the sweep itself.
    struct Scenario
    {
        CovarianceMatrix R;      // channel correlation without coupling
        CovarianceMatrix R_iso;  // isotropic reference at the same geometry
        CouplingModel coupling;
        CovarianceMatrix R_mc;     // C^1/2 R C^1/2
        CovarianceMatrix R_mc_iso; // C^1/2 R_iso C^1/2
        CMatrix R_mc_sqrt;
    };

    Scenario build_scenario(const SweepConfig &config);

    /// Prior covariance used by an MMSE-structured estimator; nullopt for ls.
    const CovarianceMatrix *estimator_prior(const Scenario &s, EstimatorKind kind);

    EstimatorSpec make_estimator(const Scenario &s, EstimatorKind kind, double rho);

    struct SweepPoint
    {
        EstimatorKind estimator;
        double snr_db;
        double analytic_mse;
        double analytic_nmse_db;
        bool has_mc = false;
        double mc_mse = 0.0;
        double mc_stderr = 0.0;
    };

    struct SweepMetadata
    {
        Index elements = 0;
        double trace_R = 0.0;
        double trace_R_mc = 0.0;
        double trace_ratio = 0.0; // tr(R_mc) / tr(R)
        Index rank_R = 0;
        Index rank_R_iso = 0;
        Index rank_R_mc = 0;
        double r_dissipation = 0.0;
        double coupling_scale = 0.0;
        std::uint64_t base_seed = 0;
        int mc_trials = 0;
        std::vector<std::string> warnings;
    };

    struct SweepResult
    {
        std::vector<double> snr_grid_db;
        std::vector<EstimatorKind> estimators;
        std::vector<SweepPoint> points; // estimator-major, SNR-minor
        SweepMetadata metadata;

        /// Throws LookupError when the estimator or grid index is absent.
        const SweepPoint &at(EstimatorKind kind, size_t snr_index) const;
    };

    struct MonteCarloCell
    {
        double mean;
        double stderr_;
    };

    /// Empirical mean of ||h - W y||^2 for each filter at one SNR. Trial t draws
    /// its channel and noise from the stream stream_key(seed, snr_index, t), so
    /// results do not depend on the thread count.
    std::vector<MonteCarloCell> monte_carlo(const CMatrix &R_sqrt, const std::vector<const CMatrix *> &filters,
                                            double rho, int trials, std::uint64_t seed, std::uint64_t snr_index,
                                            int threads = 0);

    SweepResult run_sweep(const SweepConfig &config);
    SweepResult run_sweep(const SweepConfig &config, const Scenario &scenario);

    struct GapRow
    {
        EstimatorKind estimator;
        double snr_db;
        double gap_db; // 10 log10(mse / mse_reference), analytic
    };

    /// Throws LookupError if the reference estimator is not in the result.
    std::vector<GapRow> gap_report(const SweepResult &result, EstimatorKind reference);

    /// 20 clusters with an exponential delay-power profile, azimuths uniform on
    /// (-60, 60) degrees and elevations seen from a 25 m mast toward scatterers
    /// at log-uniform distances in [35, 300] m. Angular spreads are 2 degrees.
    ClusterScenario default_cluster_scenario(std::uint64_t seed, const QuadratureOptions &opts = {});

    int resolve_threads(int requested);

    void write_sweep_csv(const SweepResult &result, std::ostream &out);
    void write_sweep_svg(const SweepResult &result, std::ostream &out);
    void write_correlation_csv(const CMatrix &R, std::ostream &out);
}

#endif
