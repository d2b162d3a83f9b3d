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

#ifndef HOLOEST_TYPES_HPP
#define HOLOEST_TYPES_HPP

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace holoest
{
    using cdouble = std::complex<double>;
    using Index = Eigen::Index;

    using CMatrix = Eigen::MatrixXcd;
    using CVector = Eigen::VectorXcd;
    using RMatrix = Eigen::MatrixXd;
    using RVector = Eigen::VectorXd;
    using Vec3 = Eigen::Vector3d;

    namespace constants
    {
        inline constexpr double pi = std::numbers::pi;
        inline constexpr double euler_gamma = std::numbers::egamma;
        inline constexpr double speed_of_light = 299792458.0;    // m/s
        inline constexpr double vacuum_permeability = 1.25663706212e-6; // H/m
        inline constexpr double free_space_impedance = vacuum_permeability * speed_of_light; // ohm
        inline constexpr double copper_conductivity = 5.8e7;     // S/m

        // Directivity of a half-wave dipole, D = 1.67 cos^3(theta).
        inline constexpr double dipole_directivity = 1.67;
    }

    // Eigenvalues below this fraction of the largest one are zeroed in every constructed covariance.
    inline constexpr double kClampTolerance = 1e-10;

    // Relative eigenvalue threshold for numerical rank decisions.
    inline constexpr double kRankTolerance = 1e-8;
}

#endif
