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

#ifndef HOLOEST_CONFIG_HPP
#define HOLOEST_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "holoest/experiments.hpp"

namespace holoest
{
    /// Raw configuration values before geometry and scenario assembly. Lengths
    /// are in wavelengths except geometry.wavelength (m); frequency is in Hz and
    /// conductivity in S/m.
    struct CliConfig
    {
        int m_y = 10;
        int m_z = 10;
        double d_y = 0.2;
        double d_z = 0.2;
        std::optional<double> wavelength; // defaults to c / frequency
        double dipole_length = 0.5;
        double dipole_radius = 1.0 / 500.0;

        CouplingOptions coupling;

        ScenarioKind scenario = ScenarioKind::isotropic;
        std::optional<std::string> scenario_file;
        std::optional<std::uint64_t> scenario_seed;
        double series_tol = 1e-12;
        QuadratureOptions quadrature;

        std::vector<double> snr_grid_db = default_snr_grid();
        std::vector<EstimatorKind> estimators = all_estimator_kinds();
        std::optional<int> mc_trials; // 10^4, or 10^5 in validation mode
        std::uint64_t seed = 2024;
        bool validation = false;

        std::string output_dir = ".";
        bool plot = false;
    };

    /// Sets one `section.key` entry. Throws ConfigError for unknown keys or
    /// malformed values; line is reported in the message when positive.
    void apply_setting(CliConfig &config, const std::string &key, const std::string &value, int line = 0);

    /// Parses `section.key = value` lines; `#` starts a comment.
    CliConfig parse_config(std::istream &in, CliConfig base = {});
    CliConfig load_config(const std::string &path, CliConfig base = {});

    /// Applies a `section.key=value` override given on the command line.
    void apply_override(CliConfig &config, const std::string &assignment);

    UpaGeometry make_geometry(const CliConfig &config);

    /// Assembles the sweep configuration. The cluster scenario is read from
    /// scenario.file or generated from scenario.seed; with neither it throws
    /// ConfigError.
    SweepConfig make_sweep_config(const CliConfig &config);

    /// "a:step:b" (inclusive) or a comma-separated list, sorted ascending.
    std::vector<double> parse_snr_grid(const std::string &text);
}

#endif
