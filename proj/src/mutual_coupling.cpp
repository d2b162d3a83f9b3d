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

#include "holoest/mutual_coupling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <Eigen/Cholesky>
#include <unsupported/Eigen/MatrixFunctions>

#include "holoest/errors.hpp"
#include "holoest/spatial_correlation.hpp"
#include "holoest/special_functions.hpp"

namespace holoest
{
    namespace
    {
        constexpr double k0 = 2.0 * constants::pi; // wavenumber in 1/wavelength
        constexpr double eta = constants::free_space_impedance;
        const cdouble J(0.0, 1.0);

        cdouble expj(double x) { return cdouble(std::cos(x), std::sin(x)); }

        // E(w) = Ci(w) - j Si(w).
        cdouble E(double w) { return cdouble(cos_integral(w), -sin_integral(w)); }

        // k (R + sigma u) with R = sqrt(d^2 + u^2), cancellation-free when sigma u < 0.
        double w_arg(double d, double u, double sigma)
        {
            const double R = std::hypot(d, u);
            const double su = sigma * u;
            return k0 * (su >= 0.0 ? R + su : d * d / (R + std::abs(u)));
        }

        // int_{ua}^{ub} exp(-jk(R + sigma u)) / R du = sigma [E(w_b) - E(w_a)].
        cdouble kernel_integral(double d, double ua, double ub, double sigma)
        {
            if (ua == ub)
                return 0.0;
            if (d == 0.0)
            {
                // Collinear: the interval may not contain u = 0.
                if (ua * ub <= 0.0)
                    throw DomainError("mutual impedance: collinear dipoles overlap");
                if (sigma * ua > 0.0)
                    return sigma * (E(2.0 * k0 * std::abs(ub)) - E(2.0 * k0 * std::abs(ua)));
                // w -> 0 at both ends; only the logarithm of Ci survives.
                return sigma * std::log(std::abs(ua) / std::abs(ub));
            }
            return sigma * (E(w_arg(d, ub, sigma)) - E(w_arg(d, ua, sigma)));
        }

        // Contribution of the field source at z_e over the segment [a, b] of the
        // second dipole, weighted by exp(jk s z_e).
        cdouble segment(double d, double ze, double a, double b, double s)
        {
            return expj(k0 * s * ze) * kernel_integral(d, a - ze, b - ze, -s);
        }
    }

    cdouble self_impedance(double l, double a)
    {
        if (!(l > 0.0) || !(a > 0.0) || !(a < l / 10.0))
            throw DomainError("self_impedance: requires 0 < radius < length/10");
        const double kl = k0 * l;
        const double C = constants::euler_gamma;
        const double s = std::sin(kl), c = std::cos(kl);
        const double r = eta / (2.0 * constants::pi) *
                         (C + std::log(kl) - cos_integral(kl) +
                          0.5 * s * (sin_integral(2.0 * kl) - 2.0 * sin_integral(kl)) +
                          0.5 * c * (C + std::log(kl / 2.0) + cos_integral(2.0 * kl) - 2.0 * cos_integral(kl)));
        const double x = eta / (4.0 * constants::pi) *
                         (2.0 * sin_integral(kl) + c * (2.0 * sin_integral(kl) - sin_integral(2.0 * kl)) -
                          s * (2.0 * cos_integral(kl) - cos_integral(2.0 * kl) - cos_integral(2.0 * k0 * a * a / l)));
        // Radiation resistance at the current maximum.
        return cdouble(r, x);
    }

    cdouble mutual_impedance_parallel(double d, double h, double l)
    {
        if (!(d >= 0.0) || !(l > 0.0) || !std::isfinite(d) || !std::isfinite(h))
            throw DomainError("mutual_impedance_parallel: invalid arguments");
        const double L = 0.5 * l;
        const double sources[3] = {L, -L, 0.0};
        const double weights[3] = {1.0, 1.0, -2.0 * std::cos(k0 * L)};
        cdouble sum = 0.0;
        for (int e = 0; e < 3; ++e)
        {
            if (weights[e] == 0.0)
                continue;
            const double ze = sources[e];
            const cdouble upper = expj(k0 * (L + h)) * segment(d, ze, h, h + L, -1.0) -
                                  expj(-k0 * (L + h)) * segment(d, ze, h, h + L, 1.0);
            const cdouble lower = expj(k0 * (L - h)) * segment(d, ze, h - L, h, 1.0) -
                                  expj(-k0 * (L - h)) * segment(d, ze, h - L, h, -1.0);
            sum += weights[e] * (upper + lower);
        }
        return eta / (8.0 * constants::pi) * sum;
    }

    cdouble mutual_impedance_side_by_side(double d, double l)
    {
        if (!(d > 0.0))
            throw DomainError("mutual_impedance_side_by_side: separation must be positive");
        return mutual_impedance_parallel(d, 0.0, l);
    }

    cdouble mutual_impedance_collinear(double h, double l, double radius)
    {
        if (!(h > 0.0))
            throw DomainError("mutual_impedance_collinear: offset must be positive");
        if (!(radius > 0.0))
            throw DomainError("mutual_impedance_collinear: radius must be positive");
        if (h - l >= 1e-6 * l)
            return mutual_impedance_parallel(0.0, h, l);
        // Overlapping wires: evaluate on the conductor surface.
        return mutual_impedance_parallel(radius, h, l);
    }

    cdouble mutual_impedance_echelon(double d, double h, double l)
    {
        if (!(d > 0.0))
            throw DomainError("mutual_impedance_echelon: separation must be positive");
        return mutual_impedance_parallel(d, std::abs(h), l);
    }

    CMatrix impedance_matrix(const UpaGeometry &geometry, std::vector<std::string> *warnings)
    {
        const int my = geometry.m_y(), mz = geometry.m_z();
        const double l = geometry.dipole_length(), a = geometry.dipole_radius();
        if (warnings && mz > 1 && geometry.d_z() < l)
        {
            std::ostringstream msg;
            msg << "vertical spacing " << geometry.d_z() << " is below the dipole length " << l
                << "; stacked dipoles overlap and are coupled on the wire surface";
            warnings->push_back(msg.str());
        }

        CMatrix table(my, mz);
        for (int iy = 0; iy < my; ++iy)
            for (int iz = 0; iz < mz; ++iz)
            {
                const double d = iy * geometry.d_y(), h = iz * geometry.d_z();
                if (iy == 0 && iz == 0)
                    table(iy, iz) = self_impedance(l, a);
                else if (iz == 0)
                    table(iy, iz) = mutual_impedance_side_by_side(d, l);
                else if (iy == 0)
                    table(iy, iz) = mutual_impedance_collinear(h, l, a);
                else
                    table(iy, iz) = mutual_impedance_echelon(d, h, l);
            }

        const Index M = geometry.size();
        CMatrix Z(M, M);
        for (Index n = 0; n < M; ++n)
            for (Index m = 0; m < M; ++m)
                Z(n, m) = table(std::abs(geometry.row(n) - geometry.row(m)),
                                std::abs(geometry.column(n) - geometry.column(m)));
        return Z;
    }

    double dissipation_resistance(const UpaGeometry &geometry, double frequency, double conductivity)
    {
        if (!(frequency > 0.0) || !(conductivity > 0.0))
            throw DomainError("dissipation_resistance: frequency and conductivity must be positive");
        const double length = geometry.dipole_length() * geometry.wavelength();
        const double radius = geometry.dipole_radius() * geometry.wavelength();
        const double surface = std::sqrt(constants::pi * frequency * constants::vacuum_permeability / conductivity);
        return length / (2.0 * 2.0 * constants::pi * radius) * surface;
    }

    std::string to_string(CouplingNormalization n)
    {
        switch (n)
        {
        case CouplingNormalization::none:
            return "none";
        case CouplingNormalization::self:
            return "self";
        case CouplingNormalization::isotropic_power:
            return "isotropic_power";
        }
        return "none";
    }

    CouplingNormalization parse_coupling_normalization(const std::string &s)
    {
        if (s == "none")
            return CouplingNormalization::none;
        if (s == "self")
            return CouplingNormalization::self;
        if (s == "isotropic_power")
            return CouplingNormalization::isotropic_power;
        throw DomainError("unknown coupling normalization '" + s + "'");
    }

    CouplingModel coupling_model(const UpaGeometry &geometry, const CouplingOptions &opts)
    {
        CouplingModel model;
        model.impedance = impedance_matrix(geometry, &model.warnings);
        model.r_dissipation = dissipation_resistance(geometry, opts.frequency, opts.conductivity);
        model.full_impedance = opts.use_full_impedance;
        model.normalization = opts.normalization;
        const Index M = geometry.size();

        if (!opts.use_full_impedance)
        {
            RMatrix A = model.impedance.real();
            A.diagonal().array() += model.r_dissipation;
            Eigen::LLT<RMatrix> llt(A);
            if (llt.info() != Eigen::Success)
                throw DomainError("coupling_model: Re{Z} + R_d I is not positive definite");
            RMatrix C = llt.solve(RMatrix::Identity(M, M));
            C = 0.5 * (C + C.transpose()).eval();
            model.coupling = C.cast<cdouble>();
            const Eigendecomposition e = hermitian_eig(model.coupling);
            if (e.values(M - 1) <= 0.0)
                throw DomainError("coupling_model: coupling matrix is not positive definite");
            RMatrix S = (e.basis * e.values.cwiseSqrt().cast<cdouble>().asDiagonal() * e.basis.adjoint()).real();
            S = 0.5 * (S + S.transpose()).eval();
            model.coupling_sqrt = S.cast<cdouble>();
        }
        else
        {
            CMatrix A = model.impedance;
            A.diagonal().array() += model.r_dissipation;
            const CMatrix C = A.partialPivLu().inverse();
            model.coupling = 0.5 * (C + C.transpose());
            model.coupling_sqrt = model.coupling.sqrt();
        }

        double scale = 1.0;
        switch (opts.normalization)
        {
        case CouplingNormalization::none:
            break;
        case CouplingNormalization::self:
            scale = self_impedance(geometry.dipole_length(), geometry.dipole_radius()).real() + model.r_dissipation;
            break;
        case CouplingNormalization::isotropic_power:
        {
            const CovarianceMatrix R = iso_matrix(geometry);
            const CMatrix S = model.coupling_sqrt;
            const double coupled = (S * R.entries() * S.adjoint()).trace().real();
            scale = R.trace() / coupled;
            break;
        }
        }
        model.scale = scale;
        model.coupling *= scale;
        model.coupling_sqrt *= std::sqrt(scale);
        return model;
    }

    CovarianceMatrix effective_correlation(const CouplingModel &model, const CovarianceMatrix &R)
    {
        if (model.coupling_sqrt.rows() != R.size())
            throw ShapeError("effective_correlation: dimension mismatch");
        // Factor form keeps the eigenvectors of R_mc consistent with C^1/2 R^1/2.
        return CovarianceMatrix::from_factor(model.coupling_sqrt * psd_sqrt(R), CovarianceKind::effective);
    }
}
