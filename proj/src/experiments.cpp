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

#include "holoest/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <thread>

#include "holoest/errors.hpp"

namespace holoest
{
    std::string to_string(ScenarioKind kind) { return kind == ScenarioKind::isotropic ? "isotropic" : "cluster"; }

    std::vector<double> default_snr_grid()
    {
        std::vector<double> g;
        for (int s = -10; s <= 24; s += 2)
            g.push_back(s);
        return g;
    }

    Scenario build_scenario(const SweepConfig &config)
    {
        Scenario s;
        s.R_iso = iso_matrix(config.geometry, config.series_tol);
        if (config.scenario == ScenarioKind::isotropic)
            s.R = s.R_iso;
        else
        {
            if (!config.clusters)
                throw DomainError("build_scenario: cluster scenario requires a cluster list");
            s.R = cluster_matrix(config.geometry, *config.clusters, config.quadrature);
        }
        s.coupling = coupling_model(config.geometry, config.coupling);
        s.R_mc = effective_correlation(s.coupling, s.R);
        s.R_mc_iso = effective_correlation(s.coupling, s.R_iso);
        s.R_mc_sqrt = psd_sqrt(s.R_mc);
        return s;
    }

    const CovarianceMatrix *estimator_prior(const Scenario &s, EstimatorKind kind)
    {
        switch (kind)
        {
        case EstimatorKind::mmse_true:
            return &s.R_mc;
        case EstimatorKind::mmse_coupling_aware_iso:
            return &s.R_mc_iso;
        case EstimatorKind::mmse_iso:
            return &s.R_iso;
        case EstimatorKind::ls:
            return nullptr;
        }
        return nullptr;
    }

    EstimatorSpec make_estimator(const Scenario &s, EstimatorKind kind, double rho)
    {
        const CovarianceMatrix *prior = estimator_prior(s, kind);
        if (!prior)
            return ls_filter(rho, s.R_mc.size());
        return mmse_filter(*prior, rho, kind);
    }

    const SweepPoint &SweepResult::at(EstimatorKind kind, size_t snr_index) const
    {
        for (const auto &p : points)
            if (p.estimator == kind && snr_index < snr_grid_db.size() && p.snr_db == snr_grid_db[snr_index])
                return p;
        throw LookupError("SweepResult: no entry for " + to_string(kind));
    }

    int resolve_threads(int requested)
    {
        if (requested > 0)
            return requested;
        if (const char *env = std::getenv("HOLOEST_THREADS"))
        {
            const int n = std::atoi(env);
            if (n > 0)
                return n;
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return hw > 0 ? static_cast<int>(hw) : 1;
    }

    namespace
    {
        bool is_real(const CMatrix &A) { return A.imag().cwiseAbs().maxCoeff() == 0.0; }

        // A X, using two real products when A is real.
        struct Operator
        {
            CMatrix complex;
            RMatrix real;
            bool is_real_;

            explicit Operator(const CMatrix &A) : complex(A), is_real_(is_real(A))
            {
                if (is_real_)
                    real = A.real();
            }

            CMatrix apply(const CMatrix &X) const
            {
                if (!is_real_)
                    return complex * X;
                CMatrix out(real.rows(), X.cols());
                out.real() = real * X.real();
                out.imag() = real * X.imag();
                return out;
            }
        };
    }

    std::vector<MonteCarloCell> monte_carlo(const CMatrix &R_sqrt, const std::vector<const CMatrix *> &filters,
                                            double rho, int trials, std::uint64_t seed, std::uint64_t snr_index,
                                            int threads)
    {
        if (trials < 2)
            throw DomainError("monte_carlo: at least two trials are required");
        if (!(rho > 0.0))
            throw DomainError("monte_carlo: rho must be positive");
        const Index M = R_sqrt.rows();
        const Operator root(R_sqrt);
        std::vector<Operator> ops;
        for (const CMatrix *W : filters)
        {
            if (W->rows() != M || W->cols() != M)
                throw ShapeError("monte_carlo: filter dimension mismatch");
            ops.emplace_back(*W);
        }

        constexpr int batch = 128;
        const int batches = (trials + batch - 1) / batch;
        std::vector<std::vector<double>> errors(filters.size(), std::vector<double>(static_cast<size_t>(trials)));
        const double s = std::sqrt(rho);

        auto run_batch = [&](int b)
        {
            const int first = b * batch;
            const int n = std::min(batch, trials - first);
            CMatrix Hiid(M, n), N(M, n);
            CVector col(M);
            for (int c = 0; c < n; ++c)
            {
                RandomStream rng(stream_key(seed, snr_index, static_cast<std::uint64_t>(first + c)));
                rng.fill_complex_normal(col);
                Hiid.col(c) = col;
                rng.fill_complex_normal(col);
                N.col(c) = col;
            }
            const CMatrix H = root.apply(Hiid);
            const CMatrix Y = s * H + N;
            for (size_t f = 0; f < ops.size(); ++f)
            {
                const CMatrix E = ops[f].apply(Y) - H;
                for (int c = 0; c < n; ++c)
                    errors[f][static_cast<size_t>(first + c)] = E.col(c).squaredNorm();
            }
        };

        const int nthreads = std::min(resolve_threads(threads), batches);
        if (nthreads <= 1)
        {
            for (int b = 0; b < batches; ++b)
                run_batch(b);
        }
        else
        {
            std::atomic<int> next{0};
            std::vector<std::thread> pool;
            for (int t = 0; t < nthreads; ++t)
                pool.emplace_back(
                    [&]()
                    {
                        for (int b = next++; b < batches; b = next++)
                            run_batch(b);
                    });
            for (auto &th : pool)
                th.join();
        }

        std::vector<MonteCarloCell> out;
        for (const auto &e : errors)
        {
            double sum = 0.0;
            for (double v : e)
                sum += v;
            const double mean = sum / trials;
            double ss = 0.0;
            for (double v : e)
                ss += (v - mean) * (v - mean);
            const double var = ss / (trials - 1);
            out.push_back({mean, std::sqrt(var / trials)});
        }
        return out;
    }

    SweepResult run_sweep(const SweepConfig &config)
    {
        return run_sweep(config, build_scenario(config));
    }

    SweepResult run_sweep(const SweepConfig &config, const Scenario &scenario)
    {
        if (config.snr_grid_db.empty())
            throw DomainError("run_sweep: SNR grid is empty");
        if (!std::is_sorted(config.snr_grid_db.begin(), config.snr_grid_db.end()))
            throw DomainError("run_sweep: SNR grid must be sorted");
        if (config.estimators.empty())
            throw DomainError("run_sweep: no estimators selected");
        if (config.mc_trials < 0 || (config.mc_trials > 0 && config.mc_trials < 100))
            throw DomainError("run_sweep: Monte Carlo needs at least 100 trials");

        SweepResult result;
        result.snr_grid_db = config.snr_grid_db;
        result.estimators = config.estimators;

        const double tr = scenario.R_mc.trace();
        const size_t ns = config.snr_grid_db.size();
        std::vector<std::vector<SweepPoint>> table(config.estimators.size(), std::vector<SweepPoint>(ns));

        for (size_t s = 0; s < ns; ++s)
        {
            const double snr_db = config.snr_grid_db[s];
            const double rho = std::pow(10.0, snr_db / 10.0);
            std::vector<EstimatorSpec> specs;
            for (size_t e = 0; e < config.estimators.size(); ++e)
            {
                specs.push_back(make_estimator(scenario, config.estimators[e], rho));
                const double mse = analytic_mse(specs.back(), scenario.R_mc);
                table[e][s] = {config.estimators[e], snr_db, mse, 10.0 * std::log10(mse / tr)};
            }
            if (config.mc_trials > 0)
            {
                std::vector<const CMatrix *> filters;
                for (const auto &sp : specs)
                    filters.push_back(&sp.filter);
                const auto cells = monte_carlo(scenario.R_mc_sqrt, filters, rho, config.mc_trials, config.base_seed,
                                               s, config.threads);
                for (size_t e = 0; e < specs.size(); ++e)
                {
                    SweepPoint &p = table[e][s];
                    p.has_mc = true;
                    p.mc_mse = cells[e].mean;
                    p.mc_stderr = cells[e].stderr_;
                    if (config.validation && std::abs(p.mc_mse - p.analytic_mse) > 5.0 * p.mc_stderr)
                    {
                        std::ostringstream msg;
                        msg << "Monte Carlo MSE of " << to_string(p.estimator) << " at " << snr_db
                            << " dB deviates from the analytic value by more than 5 standard errors";
                        throw ValidationFailure(msg.str());
                    }
                }
            }
        }
        for (auto &row : table)
            for (auto &p : row)
                result.points.push_back(p);

        auto &md = result.metadata;
        md.elements = scenario.R_mc.size();
        md.trace_R = scenario.R.trace();
        md.trace_R_mc = tr;
        md.trace_ratio = tr / md.trace_R;
        md.rank_R = scenario.R.rank();
        md.rank_R_iso = scenario.R_iso.rank();
        md.rank_R_mc = scenario.R_mc.rank();
        md.r_dissipation = scenario.coupling.r_dissipation;
        md.coupling_scale = scenario.coupling.scale;
        md.base_seed = config.base_seed;
        md.mc_trials = config.mc_trials;
        md.warnings = scenario.coupling.warnings;
        return result;
    }

    std::vector<GapRow> gap_report(const SweepResult &result, EstimatorKind reference)
    {
        if (std::find(result.estimators.begin(), result.estimators.end(), reference) == result.estimators.end())
            throw LookupError("gap_report: reference estimator " + to_string(reference) + " not in result");
        std::vector<GapRow> rows;
        for (auto kind : result.estimators)
            for (size_t s = 0; s < result.snr_grid_db.size(); ++s)
            {
                const double ref = result.at(reference, s).analytic_mse;
                const double v = result.at(kind, s).analytic_mse;
                rows.push_back({kind, result.snr_grid_db[s], 10.0 * std::log10(v / ref)});
            }
        return rows;
    }

    ClusterScenario default_cluster_scenario(std::uint64_t seed, const QuadratureOptions &opts)
    {
        constexpr int count = 20;
        constexpr double delay_scaling = 2.3;
        constexpr double delay_spread = 363e-9;
        constexpr double shadowing_db = 3.0;
        constexpr double bs_height = 25.0, ut_height = 1.5;
        constexpr double deg = constants::pi / 180.0;

        RandomStream rng(stream_key(seed, 0x636c7573746572ULL));
        std::normal_distribution<double> shadow(0.0, shadowing_db);
        std::vector<double> delays(count), shadows(count), azimuths(count), distances(count);
        for (int n = 0; n < count; ++n)
        {
            delays[n] = -delay_scaling * delay_spread * std::log(1.0 - rng.uniform(0.0, 1.0));
            shadows[n] = shadow(rng.engine());
            azimuths[n] = rng.uniform(-60.0, 60.0) * deg;
            distances[n] = std::exp(rng.uniform(std::log(35.0), std::log(300.0)));
        }
        const double first = *std::min_element(delays.begin(), delays.end());

        std::vector<Cluster> clusters;
        for (int n = 0; n < count; ++n)
        {
            const double tau = delays[n] - first;
            const double power = std::exp(-tau * (delay_scaling - 1.0) / (delay_scaling * delay_spread)) *
                                 std::pow(10.0, -shadows[n] / 10.0);
            const double elevation = -std::atan((bs_height - ut_height) / distances[n]);
            clusters.push_back({power, azimuths[n], elevation, 2.0 * deg, 2.0 * deg});
        }
        return ClusterScenario(std::move(clusters), opts);
    }

    void write_sweep_csv(const SweepResult &result, std::ostream &out)
    {
        out << "estimator,snr_db,analytic_mse,analytic_nmse_db,mc_mse,mc_stderr\n";
        char buf[512];
        for (const auto &p : result.points)
        {
            if (p.has_mc)
                std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,%.17g,%.17g\n", to_string(p.estimator).c_str(),
                              p.snr_db, p.analytic_mse, p.analytic_nmse_db, p.mc_mse, p.mc_stderr);
            else
                std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,,\n", to_string(p.estimator).c_str(), p.snr_db,
                              p.analytic_mse, p.analytic_nmse_db);
            out << buf;
        }
    }

    void write_correlation_csv(const CMatrix &R, std::ostream &out)
    {
        out << "n,m,re,im\n";
        char buf[128];
        for (Index n = 0; n < R.rows(); ++n)
            for (Index m = 0; m < R.cols(); ++m)
            {
                // Adding 0.0 turns -0 into +0.
                std::snprintf(buf, sizeof buf, "%ld,%ld,%.17g,%.17g\n", static_cast<long>(n), static_cast<long>(m),
                              R(n, m).real() + 0.0, R(n, m).imag() + 0.0);
                out << buf;
            }
    }

    void write_sweep_svg(const SweepResult &result, std::ostream &out)
    {
        const double width = 720, height = 480;
        const double left = 70, right = 200, top = 40, bottom = 60;
        const double pw = width - left - right, ph = height - top - bottom;

        double xmin = result.snr_grid_db.front(), xmax = result.snr_grid_db.back();
        if (xmax == xmin)
            xmax = xmin + 1.0;
        double ymin = 1e300, ymax = -1e300;
        for (const auto &p : result.points)
        {
            ymin = std::min(ymin, p.analytic_nmse_db);
            ymax = std::max(ymax, p.analytic_nmse_db);
        }
        ymin = 5.0 * std::floor(ymin / 5.0);
        ymax = 5.0 * std::ceil(ymax / 5.0);
        if (ymax == ymin)
            ymax = ymin + 5.0;

        auto X = [&](double v) { return left + (v - xmin) / (xmax - xmin) * pw; };
        auto Y = [&](double v) { return top + (ymax - v) / (ymax - ymin) * ph; };
        const char *colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

        char buf[256];
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        std::snprintf(buf, sizeof buf,
                      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" viewBox=\"0 0 %g %g\">\n",
                      width, height, width, height);
        out << buf;
        out << "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        std::snprintf(buf, sizeof buf,
                      "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" stroke=\"black\"/>\n", left,
                      top, pw, ph);
        out << buf;

        for (double v = ymin; v <= ymax + 1e-9; v += 5.0)
        {
            std::snprintf(buf, sizeof buf,
                          "<line x1=\"%g\" y1=\"%.2f\" x2=\"%g\" y2=\"%.2f\" stroke=\"#dddddd\"/>"
                          "<text x=\"%g\" y=\"%.2f\" font-size=\"12\" text-anchor=\"end\">%g</text>\n",
                          left, Y(v), left + pw, Y(v), left - 6, Y(v) + 4, v);
            out << buf;
        }
        for (double v : result.snr_grid_db)
        {
            std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%g\" font-size=\"12\" text-anchor=\"middle\">%g</text>\n",
                          X(v), top + ph + 18, v);
            out << buf;
        }
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%g\" y=\"%g\" font-size=\"14\" text-anchor=\"middle\">pilot SNR [dB]</text>\n",
                      left + pw / 2, height - 15);
        out << buf;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"18\" y=\"%g\" font-size=\"14\" text-anchor=\"middle\" "
                      "transform=\"rotate(-90 18 %g)\">NMSE [dB]</text>\n",
                      top + ph / 2, top + ph / 2);
        out << buf;

        for (size_t e = 0; e < result.estimators.size(); ++e)
        {
            const char *color = colors[e % 6];
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
            for (size_t s = 0; s < result.snr_grid_db.size(); ++s)
            {
                const auto &p = result.at(result.estimators[e], s);
                std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", s ? " " : "", X(p.snr_db), Y(p.analytic_nmse_db));
                out << buf;
            }
            out << "\"/>\n";
            const double ly = top + 20 + 22.0 * static_cast<double>(e);
            std::snprintf(buf, sizeof buf,
                          "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"%s\" stroke-width=\"2\"/>"
                          "<text x=\"%g\" y=\"%g\" font-size=\"12\">%s</text>\n",
                          left + pw + 12, ly, left + pw + 40, ly, color, left + pw + 46, ly + 4,
                          to_string(result.estimators[e]).c_str());
            out << buf;
        }
        out << "</svg>\n";
    }
}
