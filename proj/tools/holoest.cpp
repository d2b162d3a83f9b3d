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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "holoest/config.hpp"
#include "holoest/errors.hpp"
#include "holoest/experiments.hpp"
#include "holoest/validation.hpp"

namespace
{
    using namespace holoest;

    enum Exit
    {
        exit_ok = 0,
        exit_usage = 1,
        exit_io = 2,
        exit_numerical = 3,
        exit_validation = 4
    };

    struct GlobalOptions
    {
        std::string config_path;
        std::optional<std::uint64_t> seed;
        bool quiet = false;
        std::vector<std::string> overrides;
    };

    CliConfig load(const GlobalOptions &g)
    {
        CliConfig c;
        if (!g.config_path.empty())
            c = load_config(g.config_path);
        for (const auto &o : g.overrides)
            apply_override(c, o);
        if (g.seed)
        {
            c.seed = *g.seed;
            c.scenario_seed = *g.seed;
        }
        return c;
    }

    std::ofstream open_output(const std::filesystem::path &path)
    {
        if (path.has_parent_path())
        {
            std::error_code ec;
            std::filesystem::create_directories(path.parent_path(), ec);
            if (ec)
                throw IoError("cannot create directory '" + path.parent_path().string() + "': " +
                                             ec.message());
        }
        std::ofstream out(path);
        if (!out)
            throw IoError("cannot open '" + path.string() + "' for writing");
        return out;
    }

    void finish(std::ofstream &out, const std::filesystem::path &path)
    {
        out.close();
        if (!out)
            throw IoError("write to '" + path.string() + "' failed");
    }

    int cmd_correlation(const GlobalOptions &g, const std::string &mode, const std::string &out_path)
    {
        CliConfig c = load(g);
        if (mode == "cluster")
            c.scenario = ScenarioKind::cluster;
        else
            c.scenario = ScenarioKind::isotropic;
        const SweepConfig s = make_sweep_config(c);

        CMatrix R;
        if (mode == "iso")
            R = iso_matrix(s.geometry, s.series_tol).entries();
        else if (mode == "quadrature")
            R = quadrature_correlation(s.geometry, {isotropic_scattering()}, s.quadrature);
        else
            R = cluster_matrix(s.geometry, *s.clusters, s.quadrature).entries();

        if (out_path.empty() || out_path == "-")
            write_correlation_csv(R, std::cout);
        else
        {
            std::ofstream out = open_output(out_path);
            write_correlation_csv(R, out);
            finish(out, out_path);
            if (!g.quiet)
                std::cerr << "wrote " << R.rows() << "x" << R.cols() << " matrix to " << out_path << '\n';
        }
        return exit_ok;
    }

    nlohmann::json metadata_json(const CliConfig &c, const SweepConfig &s, const SweepResult &r)
    {
        const auto &md = r.metadata;
        nlohmann::json j;
        j["geometry"] = {{"m_y", s.geometry.m_y()},
                         {"m_z", s.geometry.m_z()},
                         {"d_y", s.geometry.d_y()},
                         {"d_z", s.geometry.d_z()},
                         {"wavelength_m", s.geometry.wavelength()},
                         {"dipole_length", s.geometry.dipole_length()},
                         {"dipole_radius", s.geometry.dipole_radius()}};
        j["coupling"] = {{"frequency_hz", s.coupling.frequency},
                         {"conductivity_s_per_m", s.coupling.conductivity},
                         {"use_full_impedance", s.coupling.use_full_impedance},
                         {"normalization", to_string(s.coupling.normalization)},
                         {"r_dissipation_ohm", md.r_dissipation},
                         {"scale", md.coupling_scale}};
        j["scenario"] = {{"kind", to_string(s.scenario)}, {"series_tol", s.series_tol},
                         {"quadrature_tol", s.quadrature.abs_tol}};
        if (c.scenario_file)
            j["scenario"]["file"] = *c.scenario_file;
        if (c.scenario_seed)
            j["scenario"]["seed"] = *c.scenario_seed;
        std::vector<std::string> kinds;
        for (auto k : s.estimators)
            kinds.push_back(to_string(k));
        j["sweep"] = {{"snr_db", s.snr_grid_db}, {"estimators", kinds}, {"mc_trials", md.mc_trials},
                      {"seed", md.base_seed}, {"validation", s.validation}};
        j["elements"] = md.elements;
        j["trace_R"] = md.trace_R;
        j["trace_R_mc"] = md.trace_R_mc;
        j["trace_ratio"] = md.trace_ratio;
        j["rank"] = {{"R", md.rank_R}, {"R_iso", md.rank_R_iso}, {"R_mc", md.rank_R_mc}};
        j["warnings"] = md.warnings;
        return j;
    }

    void print_gaps(const SweepResult &r)
    {
        const auto rows = gap_report(r, EstimatorKind::mmse_true);
        std::printf("gap to mmse_true (dB)\n%-26s", "estimator");
        for (double snr : r.snr_grid_db)
            std::printf("%7.1f", snr);
        std::printf("\n");
        size_t i = 0;
        for (auto k : r.estimators)
        {
            std::printf("%-26s", to_string(k).c_str());
            for (size_t s = 0; s < r.snr_grid_db.size(); ++s)
                std::printf("%7.2f", rows[i++].gap_db);
            std::printf("\n");
        }
    }

    int cmd_sweep(const GlobalOptions &g, const std::string &out_dir, bool plot)
    {
        CliConfig c = load(g);
        if (!out_dir.empty())
            c.output_dir = out_dir;
        if (plot)
            c.plot = true;
        const SweepConfig s = make_sweep_config(c);
        const SweepResult r = run_sweep(s);

        const std::filesystem::path dir(c.output_dir);
        const auto csv_path = dir / "sweep.csv";
        std::ofstream csv = open_output(csv_path);
        write_sweep_csv(r, csv);
        finish(csv, csv_path);

        const auto meta_path = dir / "metadata.json";
        std::ofstream meta = open_output(meta_path);
        meta << metadata_json(c, s, r).dump(2) << '\n';
        finish(meta, meta_path);

        if (c.plot)
        {
            const auto svg_path = dir / "sweep.svg";
            std::ofstream svg = open_output(svg_path);
            write_sweep_svg(r, svg);
            finish(svg, svg_path);
        }
        if (!g.quiet)
        {
            for (const auto &w : r.metadata.warnings)
                std::cerr << "warning: " << w << '\n';
            if (r.estimators.size() > 0 &&
                std::find(r.estimators.begin(), r.estimators.end(), EstimatorKind::mmse_true) != r.estimators.end())
                print_gaps(r);
            std::printf("wrote %s\n", csv_path.string().c_str());
        }
        return exit_ok;
    }

    int cmd_validate(const GlobalOptions &g)
    {
        CliConfig c = load(g);
        c.validation = true;
        const SweepConfig s = make_sweep_config(c);
        const auto checks = run_validation(s);
        bool ok = true;
        for (const auto &chk : checks)
            ok = ok && chk.passed;
        if (!g.quiet || !ok)
        {
            std::ostringstream table;
            write_check_table(checks, table);
            (ok ? std::cout : std::cerr) << table.str();
        }
        if (!ok)
        {
            std::cerr << "validation failed:";
            for (const auto &chk : checks)
                if (!chk.passed)
                    std::cerr << " [" << chk.name << "]";
            std::cerr << '\n';
            return exit_validation;
        }
        return exit_ok;
    }

    int cmd_subspace(const GlobalOptions &g)
    {
        const SweepConfig s = make_sweep_config(load(g));
        const Scenario scenario = build_scenario(s);
        const SubspaceReport r = subspace_report(scenario);
        if (!g.quiet)
        {
            std::printf("scenario %s, %d elements\n", to_string(s.scenario).c_str(), s.geometry.size());
            write_subspace_report(r, std::cout);
        }
        return exit_ok;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Spatial correlation, mutual coupling and channel estimation for dense planar arrays"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    std::uint64_t seed = 0;
    app.add_option("--config", g.config_path, "configuration file (section.key = value)")->check(CLI::ExistingFile);
    auto *seed_opt = app.add_option("--seed", seed, "seed for the sweep and the generated cluster scenario");
    app.add_flag("--quiet", g.quiet, "suppress informational output");
    app.add_option("--set", g.overrides, "override a configuration entry, section.key=value")->take_all();

    std::string mode = "iso", out_path;
    auto *corr = app.add_subcommand("correlation", "write a correlation matrix as n,m,re,im CSV");
    corr->add_option("--mode", mode, "iso, cluster or quadrature")
        ->check(CLI::IsMember({"iso", "cluster", "quadrature"}));
    corr->add_option("--out", out_path, "output CSV path (stdout if omitted)");

    std::string out_dir;
    bool plot = false;
    auto *sweep = app.add_subcommand("sweep", "SNR sweep of the four estimators");
    sweep->add_option("--out", out_dir, "output directory (overrides output.dir)");
    sweep->add_flag("--plot", plot, "also write sweep.svg");

    auto *validate = app.add_subcommand("validate", "run the numerical validation suite");
    auto *subspace = app.add_subcommand("subspace", "report ranks and column-space containment");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }
    if (*seed_opt)
        g.seed = seed;

    try
    {
        if (*corr)
            return cmd_correlation(g, mode, out_path);
        if (*sweep)
            return cmd_sweep(g, out_dir, plot);
        if (*validate)
            return cmd_validate(g);
        if (*subspace)
            return cmd_subspace(g);
    }
    catch (const ConfigError &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const IoError &e)
    {
        std::cerr << "I/O error: " << e.what() << '\n';
        return exit_io;
    }
    catch (const ValidationFailure &e)
    {
        std::cerr << "validation failed: " << e.what() << '\n';
        return exit_validation;
    }
    catch (const std::exception &e)
    {
        std::cerr << "numerical error: " << e.what() << '\n';
        return exit_numerical;
    }
    return exit_usage;
}
