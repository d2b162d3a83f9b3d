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

#ifndef HOLOEST_ARRAY_GEOMETRY_HPP
#define HOLOEST_ARRAY_GEOMETRY_HPP

#include "holoest/types.hpp"

namespace holoest
{
    /// Uniform planar array in the yz-plane. Spacings and dipole dimensions are in
    /// wavelengths; only `wavelength` itself is in meters.
    class UpaGeometry
    {
    public:
        UpaGeometry(int m_y, int m_z, double d_y, double d_z, double wavelength = constants::speed_of_light / 3e9,
                    double dipole_length = 0.5, double dipole_radius = 1.0 / 500.0);

        int m_y() const { return m_y_; }
        int m_z() const { return m_z_; }
        int size() const { return m_y_ * m_z_; }
        double d_y() const { return d_y_; }
        double d_z() const { return d_z_; }
        double wavelength() const { return wavelength_; }
        double dipole_length() const { return dipole_length_; }
        double dipole_radius() const { return dipole_radius_; }

        /// Horizontal and vertical grid index of element m (0-based, row-by-row).
        int row(Index m) const { return static_cast<int>(m / m_z_); }
        int column(Index m) const { return static_cast<int>(m % m_z_); }

        bool operator==(const UpaGeometry &) const = default;

    private:
        int m_y_, m_z_;
        double d_y_, d_z_;
        double wavelength_;
        double dipole_length_, dipole_radius_;
    };

    /// Plane-wave direction with both angles in the open interval (-pi/2, pi/2).
    struct Direction
    {
        double azimuth;
        double elevation;

        Direction(double azimuth, double elevation);
    };

    /// Position of element m in wavelengths; x is always zero.
    Vec3 element_position(const UpaGeometry &geometry, Index m);

    /// k = (2pi/lambda) (cos(theta)cos(phi), cos(theta)sin(phi), sin(theta)).
    Vec3 wave_vector(const Direction &dir, double wavelength);

    /// a_m = exp(j k^T r_m) with positions taken in wavelengths.
    CVector array_response(const UpaGeometry &geometry, const Direction &dir);
}

#endif
