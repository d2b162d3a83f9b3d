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

#include "holoest/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>

#include "holoest/errors.hpp"

namespace holoest
{
    namespace
    {
        std::string format(const char *fmt, double a, double b = 0.0)
        {
            char buf[160];
            std::snprintf(buf, sizeof buf, fmt, a, b);
            return buf;
        }

        double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

        // Runs one check, turning numerical exceptions into a failure row.
        void run_check(std::vector<CheckResult> &out, const std::string &name,
                       const std::function<CheckResult()> &check)
        {
            try
            {
                CheckResult r = check();
                r.name = name;
                out.push_back(r);
            }
            catch (const std::exception &e)
            {
                out.push_back({name, false, std::string("error: ") + e.what()});
            }
        }
    }

    SubspaceReport subspace_report(const Scenario &s, double tol)
    {
        SubspaceReport r;
        const CMatrix &Cs = s.coupling.coupling_sqrt;
        const CMatrix iso_root = psd_sqrt(s.R_iso);
        const CMatrix true_factor = Cs * psd_sqrt(s.R);
        const CMatrix iso_factor = Cs * iso_root;
        const double rho = 10.0;

        r.rank_R = s.R.rank();
        r.rank_R_iso = s.R_iso.rank();
        r.rank_factor_true = column_space(true_factor).cols();
        r.rank_factor_iso = column_space(iso_factor).cols();
        r.rank_R_iso_factor = column_space(iso_root).cols();

        const EstimatorSpec w_true = make_estimator(s, EstimatorKind::mmse_true, rho);
        r.true_prior = verify_column_space(w_true, true_factor, tol);
        r.coupled_iso = verify_column_space(make_estimator(s, EstimatorKind::mmse_coupling_aware_iso, rho),
                                            iso_factor, tol);
        r.iso = verify_column_space(make_estimator(s, EstimatorKind::mmse_iso, rho), iso_root, tol);
        r.inclusion = verify_column_space(w_true, iso_factor, tol);
        r.factor_difference = (true_factor - iso_factor).cwiseAbs().maxCoeff();
        return r;
    }

    void write_subspace_report(const SubspaceReport &r, std::ostream &out)
    {
        char buf[200];
        out << "numerical ranks (eigenvalues above 1e-8 of the largest)\n";
        std::snprintf(buf, sizeof buf, "  R                 %ld\n  R_iso             %ld\n", static_cast<long>(r.rank_R),
                      static_cast<long>(r.rank_R_iso));
        out << buf;
        std::snprintf(buf, sizeof buf, "  C^1/2 R^1/2       %ld\n  C^1/2 R_iso^1/2   %ld\n  R_iso^1/2         %ld\n",
                      static_cast<long>(r.rank_factor_true), static_cast<long>(r.rank_factor_iso),
                      static_cast<long>(r.rank_R_iso_factor));
        out << buf;
        out << "containment residuals (filter basis / estimates)\n";
        const auto row = [&](const char *name, const ColumnSpaceReport &c)
        {
            std::snprintf(buf, sizeof buf, "  %-44s %.3e  %.3e  %s\n", name, c.filter_residual, c.estimate_residual,
                          c.contained ? "contained" : "NOT contained");
            out << buf;
        };
        row("mmse_true in C^1/2 R^1/2", r.true_prior);
        row("mmse_coupling_aware_iso in C^1/2 R_iso^1/2", r.coupled_iso);
        row("mmse_iso in R_iso^1/2", r.iso);
        row("mmse_true in C^1/2 R_iso^1/2", r.inclusion);
        std::snprintf(buf, sizeof buf, "max |C^1/2 R^1/2 - C^1/2 R_iso^1/2| = %.3e\n", r.factor_difference);
        out << buf;
    }

    std::vector<CheckResult> run_validation(const SweepConfig &config)
    {
        std::vector<CheckResult> out;
        const UpaGeometry &g = config.geometry;

        run_check(out, "series vs quadrature",
                  [&]
                  {
                      const CovarianceMatrix series = iso_matrix(g, config.series_tol);
                      QuadratureOptions q = config.quadrature;
                      q.abs_tol = std::min(q.abs_tol, 1e-10);
                      const CMatrix quad = quadrature_correlation(g, {isotropic_scattering()}, q);
                      const double diff = (series.entries() - quad).cwiseAbs().maxCoeff();
                      return CheckResult{"", diff < 1e-6, format("max entry difference %.3e (limit 1e-6)", diff)};
                  });

        run_check(out, "zero-separation value",
                  [&]
                  {
                      const double exact = constants::dipole_directivity * 3.0 * constants::pi / 16.0;
                      const double series = iso_entry(0.0, 0.0, config.series_tol).value;
                      const double quad = quadrature_entry(isotropic_scattering(), Vec3::Zero()).real();
                      const double err = std::max(std::abs(series - exact), std::abs(quad - exact));
                      return CheckResult{"", err < 1e-9,
                                         format("exact %.12f, worst deviation %.3e (limit 1e-9)", exact, err)};
                  });

        Scenario s;
        try
        {
            s = build_scenario(config);
        }
        catch (const std::exception &e)
        {
            out.push_back({"scenario assembly", false, std::string("error: ") + e.what()});
            return out;
        }

        run_check(out, "positive semidefinite",
                  [&]
                  {
                      const double worst = std::min({s.R.min_relative_eigenvalue(), s.R_iso.min_relative_eigenvalue(),
                                                     s.R_mc.min_relative_eigenvalue()});
                      return CheckResult{"", worst >= -kClampTolerance,
                                         format("smallest relative eigenvalue %.3e (limit -1e-10)", worst)};
                  });

        run_check(out, "column-space containment",
                  [&]
                  {
                      const SubspaceReport r = subspace_report(s);
                      const double worst =
                          std::max({r.true_prior.filter_residual, r.true_prior.estimate_residual,
                                    r.coupled_iso.filter_residual, r.coupled_iso.estimate_residual,
                                    r.iso.filter_residual, r.iso.estimate_residual, r.inclusion.filter_residual,
                                    r.inclusion.estimate_residual});
                      const bool ok = r.true_prior.contained && r.coupled_iso.contained && r.iso.contained &&
                                      r.inclusion.contained;
                      return CheckResult{"", ok, format("worst residual %.3e (limit 1e-8)", worst)};
                  });

        run_check(out, "MSE eigen-expansion",
                  [&]
                  {
                      double worst = 0.0;
                      for (double snr : config.snr_grid_db)
                      {
                          const double rho = std::pow(10.0, snr / 10.0);
                          for (auto kind : all_estimator_kinds())
                          {
                              const EstimatorSpec w = make_estimator(s, kind, rho);
                              worst = std::max(worst, relative(mse_eigen_expansion(w, s.R_mc), analytic_mse(w, s.R_mc)));
                          }
                      }
                      return CheckResult{"", worst < 1e-8, format("worst relative difference %.3e (limit 1e-8)", worst)};
                  });

        run_check(out, "closed forms",
                  [&]
                  {
                      double ls = 0.0, mmse = 0.0;
                      const double M = static_cast<double>(s.R_mc.size());
                      const RVector &lam = s.R_mc.eig().values;
                      for (double snr : config.snr_grid_db)
                      {
                          const double rho = std::pow(10.0, snr / 10.0);
                          ls = std::max(ls, relative(analytic_mse(ls_filter(rho, s.R_mc.size()), s.R_mc), M / rho));
                          double sum = 0.0;
                          for (Index i = 0; i < lam.size(); ++i)
                              sum += lam(i) / (rho * lam(i) + 1.0);
                          mmse = std::max(mmse, relative(analytic_mse(make_estimator(s, EstimatorKind::mmse_true, rho),
                                                                      s.R_mc),
                                                         sum));
                      }
                      return CheckResult{"", ls < 1e-12 && mmse < 1e-10,
                                         format("ls %.3e (limit 1e-12), matched mmse %.3e (limit 1e-10)", ls, mmse)};
                  });

        run_check(out, "estimator ordering",
                  [&]
                  {
                      SweepConfig analytic = config;
                      analytic.mc_trials = 0;
                      analytic.estimators = all_estimator_kinds();
                      const SweepResult res = run_sweep(analytic, s);
                      std::ostringstream why;
                      const size_t n = res.snr_grid_db.size();
                      const auto mse = [&](EstimatorKind k, size_t i) { return res.at(k, i).analytic_mse; };
                      const auto gap = [&](EstimatorKind k, size_t i)
                      { return 10.0 * std::log10(mse(k, i) / mse(EstimatorKind::mmse_true, i)); };
                      for (size_t i = 0; i < n; ++i)
                      {
                          const double snr = res.snr_grid_db[i];
                          for (auto k : all_estimator_kinds())
                              if (mse(k, i) < mse(EstimatorKind::mmse_true, i) * (1.0 - 1e-12))
                                  why << to_string(k) << " below mmse_true at " << snr << " dB; ";
                          if (i > 0 && gap(EstimatorKind::mmse_iso, i) < gap(EstimatorKind::mmse_iso, i - 1) - 1e-9)
                              why << "mmse_iso gap decreases at " << snr << " dB; ";
                          if (i > 0 && res.snr_grid_db[i - 1] >= 10.0 &&
                              gap(EstimatorKind::ls, i) > gap(EstimatorKind::ls, i - 1) + 1e-9)
                              why << "ls gap increases at " << snr << " dB; ";
                          if (config.scenario == ScenarioKind::cluster && snr >= 10.0 &&
                              mse(EstimatorKind::mmse_coupling_aware_iso, i) > mse(EstimatorKind::mmse_iso, i))
                              why << "mmse_coupling_aware_iso above mmse_iso at " << snr << " dB; ";
                      }
                      const std::string text = why.str();
                      return CheckResult{"", text.empty(), text.empty() ? "all grid points ordered" : text};
                  });

        run_check(out, "Monte Carlo agreement",
                  [&]
                  {
                      if (config.mc_trials == 0)
                          return CheckResult{"", true, "skipped (mc_trials = 0)"};
                      SweepConfig mc = config;
                      mc.validation = false;
                      mc.estimators = all_estimator_kinds();
                      const SweepResult res = run_sweep(mc, s);
                      double worst = 0.0;
                      for (const auto &p : res.points)
                          worst = std::max(worst, std::abs(p.mc_mse - p.analytic_mse) / p.mc_stderr);
                      return CheckResult{"", worst <= 5.0,
                                         format("%.0f trials, worst deviation %.2f standard errors (limit 5)",
                                                static_cast<double>(config.mc_trials), worst)};
                  });
        return out;
    }

    void write_check_table(const std::vector<CheckResult> &checks, std::ostream &out)
    {
        size_t width = 0;
        for (const auto &c : checks)
            width = std::max(width, c.name.size());
        for (const auto &c : checks)
            out << (c.passed ? "PASS  " : "FAIL  ") << c.name << std::string(width - c.name.size() + 2, ' ')
                << c.detail << '\n';
    }
}
