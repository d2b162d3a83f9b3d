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

#ifndef HOLOEST_SPATIAL_CORRELATION_HPP
#define HOLOEST_SPATIAL_CORRELATION_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "holoest/array_geometry.hpp"
#include "holoest/linalg.hpp"
#include "holoest/quadrature.hpp"

namespace holoest
{
    /// Angular power density over an integration rectangle in (azimuth, elevation).
    /// Breakpoints must include the rectangle corners; inner ones mark features
    /// (peaks) that the initial cubature partition should resolve.
    struct ScatteringFunction
    {
        std::function<double(double phi, double theta)> density;
        std::vector<double> phi_breaks;
        std::vector<double> theta_breaks;
    };

    /// Dipole-weighted isotropic scattering over the front half-space:
    /// f = (1.67 / 2pi) cos^4(theta).
    ScatteringFunction isotropic_scattering();

    /// Series radius in wavelengths; iso_entry uses cubature beyond it.
    inline constexpr double kSeriesRadius = 1.5;
    inline constexpr int kSeriesMaxOrder = 60;

    struct IsoEntryResult
    {
        double value;
        bool used_quadrature;
        int terms; // outer layers summed (0 when cubature was used)
    };

    /// Isotropic correlation at separation (dy, dz) in wavelengths. The double
    /// series stops at the first outer layer whose magnitude is below tol.
    /// Separations beyond kSeriesRadius are integrated numerically at tolerance
    /// min(tol, 1e-12).
    IsoEntryResult iso_entry(double dy, double dz, double tol = 1e-12);

    /// Real symmetric block-Toeplitz isotropic correlation matrix.
    CovarianceMatrix iso_matrix(const UpaGeometry &geometry, double tol = 1e-12);

    /// Integral of f(phi, theta) exp(j k(phi, theta)^T dr) with dr in wavelengths.
    cdouble quadrature_entry(const ScatteringFunction &f, const Vec3 &delta_r, const QuadratureOptions &opts = {});

    /// Integrals for several separations sharing the same cubature nodes.
    CVector quadrature_entries(const ScatteringFunction &f, const std::vector<Vec3> &delta_r,
                               const QuadratureOptions &opts = {});

    /// Correlation matrix of f on the array by cubature. All (2M_y-1)(2M_z-1)
    /// distinct offsets are integrated in one pass.
    CMatrix quadrature_correlation(const UpaGeometry &geometry, const std::vector<ScatteringFunction> &parts,
                                   const QuadratureOptions &opts = {});

    struct Cluster
    {
        double power;       // normalized weight
        double azimuth;     // radians
        double elevation;   // radians
        double sigma_phi;   // radians
        double sigma_theta; // radians
    };

    /// Clustered scattering scenario. The constructor normalizes the powers to
    /// sum 1 and fixes the common amplitude so the total scattering function
    /// integrates to 1. The amplitude is stored as its logarithm because the
    /// unnormalized kernel exp(cos(2 delta) / (4 sigma^2)) overflows for narrow
    /// clusters.
    class ClusterScenario
    {
    public:
        ClusterScenario() = default;
        explicit ClusterScenario(std::vector<Cluster> clusters, const QuadratureOptions &opts = {});

        const std::vector<Cluster> &clusters() const { return clusters_; }
        size_t size() const { return clusters_.size(); }
        double log_normalization() const { return log_normalization_; }
        double normalization() const;

        /// Text serialization, one cluster per line (angles in degrees).
        void write(std::ostream &out) const;
        static ClusterScenario read(std::istream &in, const QuadratureOptions &opts = {});

    private:
        std::vector<Cluster> clusters_;
        double log_normalization_ = 0.0;
    };

    /// f_n(delta, eps) = A P_n cos^4(theta_n + eps) exp(cos(2 delta)/(4 sigma_phi^2)) exp(cos(2 eps)/(4 sigma_theta^2)).
    /// Throws IndexError for a bad cluster index and DomainError outside |delta|, |eps| <= pi/2.
    double cluster_scattering(const ClusterScenario &scenario, size_t n, double delta, double eps);

    /// Log of the shape factor cos^4(theta_n + eps) exp((cos 2delta - 1)/(4 sigma_phi^2)) exp((cos 2eps - 1)/(4 sigma_theta^2)).
    double cluster_log_shape(const Cluster &c, double delta, double eps);

    /// Scattering function of cluster n on its shifted integration rectangle.
    ScatteringFunction cluster_part(const ClusterScenario &scenario, size_t n);

    CovarianceMatrix cluster_matrix(const UpaGeometry &geometry, const ClusterScenario &scenario,
                                    const QuadratureOptions &opts = {});
}

#endif
