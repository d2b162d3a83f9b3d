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

#ifndef HOLOEST_VALIDATION_HPP
#define HOLOEST_VALIDATION_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "holoest/experiments.hpp"

namespace holoest
{
    /// Column-space report for the three MMSE priors and the inclusion between
    /// the true and isotropic coupled factors.
    struct SubspaceReport
    {
        Index rank_R = 0;
        Index rank_R_iso = 0;
        Index rank_factor_true = 0; // C^1/2 R^1/2
        Index rank_factor_iso = 0;  // C^1/2 R_iso^1/2
        Index rank_R_iso_factor = 0; // R_iso^1/2
        ColumnSpaceReport true_prior;     // mmse_true in span(C^1/2 R^1/2)
        ColumnSpaceReport coupled_iso;    // mmse_coupling_aware_iso in span(C^1/2 R_iso^1/2)
        ColumnSpaceReport iso;            // mmse_iso in span(R_iso^1/2)
        ColumnSpaceReport inclusion;      // mmse_true in span(C^1/2 R_iso^1/2)
        double factor_difference = 0.0;   // max |C^1/2 R^1/2 - C^1/2 R_iso^1/2|
    };

    SubspaceReport subspace_report(const Scenario &scenario, double tol = 1e-8);

    void write_subspace_report(const SubspaceReport &report, std::ostream &out);

    struct CheckResult
    {
        std::string name;
        bool passed;
        std::string detail;
    };

    /// Series against quadrature, the zero-separation value, positive
    /// semidefiniteness, column-space containment, the eigen-expansion of the
    /// MSE, the LS and matched MMSE closed forms, estimator ordering and Monte
    /// Carlo agreement (5 standard errors). Numerical exceptions inside a check
    /// are reported as a failure of that check.
    std::vector<CheckResult> run_validation(const SweepConfig &config);

    void write_check_table(const std::vector<CheckResult> &checks, std::ostream &out);
}

#endif
