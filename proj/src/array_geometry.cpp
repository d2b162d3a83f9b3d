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

#include "holoest/array_geometry.hpp"

#include <cmath>
#include <string>

#include "holoest/errors.hpp"

namespace holoest
{
    UpaGeometry::UpaGeometry(int m_y, int m_z, double d_y, double d_z, double wavelength,
                             double dipole_length, double dipole_radius)
        : m_y_(m_y), m_z_(m_z), d_y_(d_y), d_z_(d_z), wavelength_(wavelength),
          dipole_length_(dipole_length), dipole_radius_(dipole_radius)
    {
        if (m_y < 1 || m_z < 1)
            throw DomainError("UpaGeometry: element counts must be positive");
        if (!(d_y > 0.0) || !(d_z > 0.0) || !std::isfinite(d_y) || !std::isfinite(d_z))
            throw DomainError("UpaGeometry: spacings must be positive");
        if (!(wavelength > 0.0) || !std::isfinite(wavelength))
            throw DomainError("UpaGeometry: wavelength must be positive");
        if (!(dipole_length > 0.0) || !(dipole_radius > 0.0))
            throw DomainError("UpaGeometry: dipole dimensions must be positive");
        if (!(dipole_radius < dipole_length / 10.0))
            throw DomainError("UpaGeometry: dipole radius must be below length/10");
    }

    Direction::Direction(double azimuth_, double elevation_) : azimuth(azimuth_), elevation(elevation_)
    {
        const double h = constants::pi / 2.0;
        if (!(std::abs(azimuth) < h) || !(std::abs(elevation) < h))
            throw DomainError("Direction: angles must lie in (-pi/2, pi/2)");
    }

    Vec3 element_position(const UpaGeometry &geometry, Index m)
    {
        if (m < 0 || m >= geometry.size())
            throw IndexError("element_position: index " + std::to_string(m) + " out of range");
        return Vec3(0.0, geometry.row(m) * geometry.d_y(), geometry.column(m) * geometry.d_z());
    }

    Vec3 wave_vector(const Direction &dir, double wavelength)
    {
        const double k = 2.0 * constants::pi / wavelength;
        const double ct = std::cos(dir.elevation);
        return Vec3(k * ct * std::cos(dir.azimuth), k * ct * std::sin(dir.azimuth), k * std::sin(dir.elevation));
    }

    CVector array_response(const UpaGeometry &geometry, const Direction &dir)
    {
        // Positions are in wavelengths, so the wave vector is taken at lambda = 1.
        const Vec3 k = wave_vector(dir, 1.0);
        const Index M = geometry.size();
        CVector a(M);
        for (Index m = 0; m < M; ++m)
        {
            const double phase = k.dot(element_position(geometry, m));
            a(m) = cdouble(std::cos(phase), std::sin(phase));
        }
        return a;
    }
}
