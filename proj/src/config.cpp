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

#include "holoest/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "holoest/errors.hpp"

namespace holoest
{
    namespace
    {
        std::string trim(const std::string &s)
        {
            const auto first = s.find_first_not_of(" \t\r");
            if (first == std::string::npos)
                return "";
            const auto last = s.find_last_not_of(" \t\r");
            return s.substr(first, last - first + 1);
        }

        std::vector<std::string> split(const std::string &s, char sep)
        {
            std::vector<std::string> out;
            std::string item;
            std::istringstream in(s);
            while (std::getline(in, item, sep))
                out.push_back(trim(item));
            return out;
        }

        double to_double(const std::string &key, const std::string &value, int line)
        {
            size_t used = 0;
            double x = 0.0;
            try
            {
                x = std::stod(value, &used);
            }
            catch (const std::exception &)
            {
                used = 0;
            }
            if (used == 0 || used != value.size() || !std::isfinite(x))
                throw ConfigError(key + ": expected a number, got '" + value + "'", line);
            return x;
        }

        double positive(const std::string &key, const std::string &value, int line)
        {
            const double x = to_double(key, value, line);
            if (!(x > 0.0))
                throw ConfigError(key + ": must be positive", line);
            return x;
        }

        long long to_integer(const std::string &key, const std::string &value, int line)
        {
            size_t used = 0;
            long long x = 0;
            try
            {
                x = std::stoll(value, &used);
            }
            catch (const std::exception &)
            {
                used = 0;
            }
            if (used == 0 || used != value.size())
                throw ConfigError(key + ": expected an integer, got '" + value + "'", line);
            return x;
        }

        std::uint64_t to_seed(const std::string &key, const std::string &value, int line)
        {
            size_t used = 0;
            unsigned long long x = 0;
            try
            {
                if (!value.empty() && value[0] != '-')
                    x = std::stoull(value, &used, 0);
            }
            catch (const std::exception &)
            {
                used = 0;
            }
            if (used == 0 || used != value.size())
                throw ConfigError(key + ": expected an unsigned 64-bit seed, got '" + value + "'", line);
            return x;
        }

        bool to_bool(const std::string &key, const std::string &value, int line)
        {
            if (value == "true" || value == "yes" || value == "1")
                return true;
            if (value == "false" || value == "no" || value == "0")
                return false;
            throw ConfigError(key + ": expected true or false, got '" + value + "'", line);
        }

        int count(const std::string &key, const std::string &value, int line, int lo)
        {
            const long long x = to_integer(key, value, line);
            if (x < lo || x > 1000000000)
                throw ConfigError(key + ": out of range", line);
            return static_cast<int>(x);
        }
    }

    std::vector<double> parse_snr_grid(const std::string &text)
    {
        std::vector<double> grid;
        if (text.find(':') != std::string::npos)
        {
            const auto parts = split(text, ':');
            if (parts.size() != 3)
                throw ConfigError("snr grid: expected start:step:stop");
            const double a = to_double("snr grid", parts[0], 0);
            const double step = to_double("snr grid", parts[1], 0);
            const double b = to_double("snr grid", parts[2], 0);
            if (!(step > 0.0) || b < a)
                throw ConfigError("snr grid: step must be positive and stop >= start");
            const long n = std::lround(std::floor((b - a) / step + 1e-9));
            if (n > 100000)
                throw ConfigError("snr grid: too many points");
            for (long i = 0; i <= n; ++i)
                grid.push_back(a + static_cast<double>(i) * step);
        }
        else
        {
            for (const auto &item : split(text, ','))
                grid.push_back(to_double("snr grid", item, 0));
        }
        if (grid.empty())
            throw ConfigError("snr grid: empty");
        if (!std::is_sorted(grid.begin(), grid.end()))
            throw ConfigError("snr grid: values must be sorted ascending");
        return grid;
    }

    void apply_setting(CliConfig &c, const std::string &key, const std::string &value, int line)
    {
        if (key == "geometry.m_y")
            c.m_y = count(key, value, line, 1);
        else if (key == "geometry.m_z")
            c.m_z = count(key, value, line, 1);
        else if (key == "geometry.d_y")
            c.d_y = positive(key, value, line);
        else if (key == "geometry.d_z")
            c.d_z = positive(key, value, line);
        else if (key == "geometry.wavelength")
            c.wavelength = positive(key, value, line);
        else if (key == "geometry.dipole_length")
            c.dipole_length = positive(key, value, line);
        else if (key == "geometry.dipole_radius")
            c.dipole_radius = positive(key, value, line);
        else if (key == "coupling.frequency")
            c.coupling.frequency = positive(key, value, line);
        else if (key == "coupling.conductivity")
            c.coupling.conductivity = positive(key, value, line);
        else if (key == "coupling.use_full_impedance")
            c.coupling.use_full_impedance = to_bool(key, value, line);
        else if (key == "coupling.normalization")
        {
            try
            {
                c.coupling.normalization = parse_coupling_normalization(value);
            }
            catch (const DomainError &e)
            {
                throw ConfigError(key + ": " + e.what(), line);
            }
        }
        else if (key == "scenario.kind")
        {
            if (value == "isotropic")
                c.scenario = ScenarioKind::isotropic;
            else if (value == "cluster")
                c.scenario = ScenarioKind::cluster;
            else
                throw ConfigError(key + ": expected isotropic or cluster, got '" + value + "'", line);
        }
        else if (key == "scenario.file")
            c.scenario_file = value;
        else if (key == "scenario.seed")
            c.scenario_seed = to_seed(key, value, line);
        else if (key == "scenario.series_tol")
            c.series_tol = positive(key, value, line);
        else if (key == "scenario.quadrature_tol")
            c.quadrature.abs_tol = positive(key, value, line);
        else if (key == "scenario.quadrature_max_regions")
            c.quadrature.max_regions = count(key, value, line, 1);
        else if (key == "sweep.snr_db")
        {
            try
            {
                c.snr_grid_db = parse_snr_grid(value);
            }
            catch (const ConfigError &e)
            {
                throw ConfigError(key + ": " + e.what(), line);
            }
        }
        else if (key == "sweep.estimators")
        {
            std::vector<EstimatorKind> kinds;
            for (const auto &item : split(value, ','))
            {
                try
                {
                    kinds.push_back(parse_estimator_kind(item));
                }
                catch (const DomainError &e)
                {
                    throw ConfigError(key + ": " + e.what(), line);
                }
            }
            if (kinds.empty())
                throw ConfigError(key + ": empty list", line);
            c.estimators = kinds;
        }
        else if (key == "sweep.mc_trials")
        {
            const int n = count(key, value, line, 0);
            if (n > 0 && n < 100)
                throw ConfigError(key + ": use 0 (analytic only) or at least 100 trials", line);
            c.mc_trials = n;
        }
        else if (key == "sweep.seed")
            c.seed = to_seed(key, value, line);
        else if (key == "sweep.validation")
            c.validation = to_bool(key, value, line);
        else if (key == "output.dir")
            c.output_dir = value;
        else if (key == "output.plot")
            c.plot = to_bool(key, value, line);
        else
            throw ConfigError("unknown key '" + key + "'", line);
    }

    CliConfig parse_config(std::istream &in, CliConfig base)
    {
        std::string raw;
        int line = 0;
        while (std::getline(in, raw))
        {
            ++line;
            const auto hash = raw.find('#');
            const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
            if (text.empty())
                continue;
            const auto eq = text.find('=');
            if (eq == std::string::npos)
                throw ConfigError("expected 'section.key = value'", line);
            const std::string key = trim(text.substr(0, eq));
            const std::string value = trim(text.substr(eq + 1));
            if (key.find('.') == std::string::npos)
                throw ConfigError("key '" + key + "' has no section", line);
            if (value.empty())
                throw ConfigError(key + ": missing value", line);
            apply_setting(base, key, value, line);
        }
        return base;
    }

    CliConfig load_config(const std::string &path, CliConfig base)
    {
        std::ifstream in(path);
        if (!in)
            throw IoError("cannot open config file '" + path + "'");
        try
        {
            return parse_config(in, std::move(base));
        }
        catch (const ConfigError &e)
        {
            throw ConfigError(path + ": " + e.what());
        }
    }

    void apply_override(CliConfig &config, const std::string &assignment)
    {
        const auto eq = assignment.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--set expects section.key=value, got '" + assignment + "'");
        apply_setting(config, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
    }

    UpaGeometry make_geometry(const CliConfig &c)
    {
        const double lambda = constants::speed_of_light / c.coupling.frequency;
        if (c.wavelength && std::abs(*c.wavelength - lambda) > 1e-6 * lambda)
            throw ConfigError("geometry.wavelength disagrees with speed of light / coupling.frequency");
        try
        {
            return UpaGeometry(c.m_y, c.m_z, c.d_y, c.d_z, lambda, c.dipole_length, c.dipole_radius);
        }
        catch (const DomainError &e)
        {
            throw ConfigError(std::string("geometry: ") + e.what());
        }
    }

    SweepConfig make_sweep_config(const CliConfig &c)
    {
        SweepConfig s;
        s.geometry = make_geometry(c);
        s.scenario = c.scenario;
        s.snr_grid_db = c.snr_grid_db;
        s.estimators = c.estimators;
        s.mc_trials = c.mc_trials ? *c.mc_trials : (c.validation ? 100000 : 10000);
        s.base_seed = c.seed;
        s.coupling = c.coupling;
        s.series_tol = c.series_tol;
        s.quadrature = c.quadrature;
        s.validation = c.validation;
        if (c.scenario == ScenarioKind::cluster)
        {
            if (c.scenario_file)
            {
                std::ifstream in(*c.scenario_file);
                if (!in)
                    throw IoError("cannot open scenario file '" + *c.scenario_file + "'");
                try
                {
                    s.clusters = ClusterScenario::read(in, c.quadrature);
                }
                catch (const ConfigError &e)
                {
                    throw ConfigError(*c.scenario_file + ": " + e.what());
                }
            }
            else if (c.scenario_seed)
                s.clusters = default_cluster_scenario(*c.scenario_seed, c.quadrature);
            else
                throw ConfigError("cluster scenario needs scenario.file or scenario.seed");
        }
        return s;
    }
}
