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

#ifndef HOLOEST_QUADRATURE_HPP
#define HOLOEST_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "holoest/types.hpp"

namespace holoest
{
    struct QuadratureOptions
    {
        double abs_tol = 1e-9;   // target for the largest component error
        int max_regions = 20000; // refinement budget
    };

    struct QuadratureResult
    {
        CVector value;
        double error_estimate = 0.0;
        int regions = 0;
        long evaluations = 0;
    };

    /// Writes `dim` complex values of the integrand at (x, y) to out.
    using VectorIntegrand = std::function<void(double x, double y, cdouble *out)>;

    /// Globally adaptive tensor-product Gauss-Kronrod (7/15) cubature of a
    /// vector-valued integrand over the rectangle spanned by the outer
    /// breakpoints. Inner breakpoints seed the initial partition. The region
    /// with the largest error is bisected along the axis with the larger
    /// directional error estimate until the summed error is at most abs_tol.
    /// Throws IntegrationError when the budget is exhausted with an estimate
    /// above ten times the target.
    QuadratureResult integrate_2d(const VectorIntegrand &f, Index dim, const std::vector<double> &x_breaks,
                                  const std::vector<double> &y_breaks, const QuadratureOptions &opts = {});

    /// Scalar convenience wrapper.
    double integrate_2d_real(const std::function<double(double, double)> &f, const std::vector<double> &x_breaks,
                             const std::vector<double> &y_breaks, const QuadratureOptions &opts = {});
}

#endif
