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

#ifndef HOLOEST_MUTUAL_COUPLING_HPP
#define HOLOEST_MUTUAL_COUPLING_HPP

#include <string>
#include <vector>

#include "holoest/array_geometry.hpp"
#include "holoest/linalg.hpp"

namespace holoest
{
    /// Induced-EMF self impedance of a thin center-fed dipole referred to the
    /// current maximum. Lengths in wavelengths. Throws DomainError unless
    /// 0 < radius < length / 10.
    cdouble self_impedance(double dipole_length, double dipole_radius);

    /// Mutual impedance of two parallel dipoles of equal length l whose centers
    /// are offset by d across and h along the dipole axis (all in wavelengths).
    /// Sinusoidal current, referred to the current maxima. d == 0 requires the
    /// dipoles not to overlap (|h| >= l).
    cdouble mutual_impedance_parallel(double d, double h, double l);

    /// Side-by-side (h = 0). Throws DomainError for d <= 0.
    cdouble mutual_impedance_side_by_side(double d, double l);

    /// Collinear dipoles with center offset h. Overlapping or touching pairs
    /// (h <= l) are evaluated on the wire surface, i.e. with lateral offset
    /// equal to the radius. Throws DomainError for h <= 0.
    cdouble mutual_impedance_collinear(double h, double l, double radius = 1.0 / 500.0);

    /// Parallel-in-echelon. Even in h. Throws DomainError for d <= 0.
    cdouble mutual_impedance_echelon(double d, double h, double l);

    /// Symmetric impedance matrix (ohms) with z-directed dipoles. Appends a
    /// message to `warnings` when vertically adjacent dipoles overlap.
    CMatrix impedance_matrix(const UpaGeometry &geometry, std::vector<std::string> *warnings = nullptr);

    /// Ohmic loss resistance of one half-wave dipole,
    /// (l / (2 * 2 pi a)) sqrt(pi f mu0 / sigma). Throws DomainError for
    /// non-positive frequency or conductivity.
    double dissipation_resistance(const UpaGeometry &geometry, double frequency, double conductivity);

    enum class CouplingNormalization
    {
        none,           // C in 1/ohm
        self,           // C scaled by (R_self + R_d): unit diagonal for an isolated element
        isotropic_power // C scaled so tr(C^1/2 R_iso C^1/2) = tr(R_iso)
    };

    std::string to_string(CouplingNormalization n);
    CouplingNormalization parse_coupling_normalization(const std::string &s);

    struct CouplingOptions
    {
        double frequency = 3e9;                             // Hz
        double conductivity = constants::copper_conductivity; // S/m
        bool use_full_impedance = false;
        CouplingNormalization normalization = CouplingNormalization::isotropic_power;
    };

    struct CouplingModel
    {
        CMatrix impedance;     // Z, ohms
        double r_dissipation;  // R_d, ohms
        CMatrix coupling;      // C = scale * (Re Z + R_d I)^-1, or the complex variant
        CMatrix coupling_sqrt; // C^1/2
        double scale;          // normalization factor applied to the physical C
        bool full_impedance;
        CouplingNormalization normalization;
        std::vector<std::string> warnings;
    };

    /// Builds Z, R_d and the coupling matrix. By default
    /// C = s (Re{Z} + R_d I)^-1 with s from the chosen normalization; with
    /// use_full_impedance the complex (Z + R_d I)^-1 and its principal square
    /// root are used instead. Throws DomainError if Re{Z} + R_d I is not
    /// positive definite.
    CouplingModel coupling_model(const UpaGeometry &geometry, const CouplingOptions &opts = {});

    /// R_mc = C^1/2 R (C^1/2)^H.
    CovarianceMatrix effective_correlation(const CouplingModel &model, const CovarianceMatrix &R);
}

#endif
