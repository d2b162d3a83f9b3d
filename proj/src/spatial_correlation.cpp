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

#include "holoest/spatial_correlation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "holoest/errors.hpp"
#include "holoest/special_functions.hpp"

namespace holoest
{
    namespace
    {
        constexpr double half_pi = constants::pi / 2.0;
        constexpr double two_pi = 2.0 * constants::pi;
        constexpr double deg = constants::pi / 180.0;

        // Breakpoints for a peak at `center` with width `sigma` inside [lo, hi].
        std::vector<double> peak_breaks(double lo, double hi, double center, double sigma)
        {
            std::vector<double> b{lo, hi};
            for (double t : {center - 8.0 * sigma, center, center + 8.0 * sigma})
                if (t > lo && t < hi)
                    b.push_back(t);
            std::sort(b.begin(), b.end());
            return b;
        }

        double iso_series(double dy, double dz, double tol, int &terms)
        {
            const double ady = std::abs(dy), adz = std::abs(dz);
            const double ly = ady > 0.0 ? 2.0 * std::log(ady) : 0.0;
            const double lz = adz > 0.0 ? 2.0 * std::log(adz) : 0.0;
            double sum = 0.0;
            terms = 0;
            for (int k = 0; k <= kSeriesMaxOrder; ++k)
            {
                // Every term of a layer carries the sign (-1)^k, so the layer has no
                // internal cancellation.
                double layer = 0.0;
                for (int l = 0; l <= k; ++l)
                {
                    if (k - l > 0 && adz == 0.0)
                        continue;
                    if (l > 0 && ady == 0.0)
                        continue;
                    const SignedLog a = log_alpha_magnitude(k, l);
                    layer += std::exp(a.log_magnitude + (k - l) * lz + l * ly);
                }
                sum += (k % 2 == 0 ? layer : -layer);
                terms = k + 1;
                if (layer < tol)
                    break;
            }
            return sum;
        }

        // Offsets with iy > 0, or iy == 0 and iz >= 0; the rest follow by conjugation.
        struct OffsetGrid
        {
            int my, mz;
            Index count() const { return static_cast<Index>(my - 1) * (2 * mz - 1) + mz; }
            Index index(int iy, int iz) const
            {
                if (iy == 0)
                    return iz;
                return mz + static_cast<Index>(iy - 1) * (2 * mz - 1) + (iz + mz - 1);
            }
        };
    }

    ScatteringFunction isotropic_scattering()
    {
        ScatteringFunction f;
        const double scale = constants::dipole_directivity / two_pi;
        f.density = [scale](double, double theta)
        {
            const double c = std::cos(theta);
            return scale * c * c * c * c;
        };
        f.phi_breaks = {-half_pi, 0.0, half_pi};
        f.theta_breaks = {-half_pi, 0.0, half_pi};
        return f;
    }

    IsoEntryResult iso_entry(double dy, double dz, double tol)
    {
        if (!(tol > 0.0))
            throw DomainError("iso_entry: tolerance must be positive");
        if (!std::isfinite(dy) || !std::isfinite(dz))
            throw DomainError("iso_entry: separations must be finite");
        if (std::hypot(dy, dz) <= kSeriesRadius)
        {
            int terms = 0;
            const double v = iso_series(dy, dz, tol, terms);
            return {v, false, terms};
        }
        QuadratureOptions opts;
        opts.abs_tol = std::min(tol, 1e-12);
        const cdouble v = quadrature_entry(isotropic_scattering(), Vec3(0.0, dy, dz), opts);
        return {v.real(), true, 0};
    }

    CVector quadrature_entries(const ScatteringFunction &f, const std::vector<Vec3> &delta_r,
                               const QuadratureOptions &opts)
    {
        const Index dim = static_cast<Index>(delta_r.size());
        if (dim == 0)
            return CVector(0);
        const VectorIntegrand g = [&](double phi, double theta, cdouble *out)
        {
            const double w = f.density(phi, theta);
            const double ct = std::cos(theta);
            const Vec3 k(two_pi * ct * std::cos(phi), two_pi * ct * std::sin(phi), two_pi * std::sin(theta));
            for (Index i = 0; i < dim; ++i)
            {
                const double p = k.dot(delta_r[static_cast<size_t>(i)]);
                out[i] = cdouble(w * std::cos(p), w * std::sin(p));
            }
        };
        return integrate_2d(g, dim, f.phi_breaks, f.theta_breaks, opts).value;
    }

    cdouble quadrature_entry(const ScatteringFunction &f, const Vec3 &delta_r, const QuadratureOptions &opts)
    {
        return quadrature_entries(f, {delta_r}, opts)(0);
    }

    CMatrix quadrature_correlation(const UpaGeometry &geometry, const std::vector<ScatteringFunction> &parts,
                                   const QuadratureOptions &opts)
    {
        const int my = geometry.m_y(), mz = geometry.m_z();
        const double dy = geometry.d_y(), dz = geometry.d_z();
        const OffsetGrid grid{my, mz};
        const Index dim = grid.count();
        CVector values = CVector::Zero(dim);

        QuadratureOptions part_opts = opts;
        if (!parts.empty())
            part_opts.abs_tol = opts.abs_tol / static_cast<double>(parts.size());

        for (const auto &f : parts)
        {
            const VectorIntegrand g = [&](double phi, double theta, cdouble *out)
            {
                const double w = f.density(phi, theta);
                if (w == 0.0)
                {
                    std::fill(out, out + dim, cdouble(0.0));
                    return;
                }
                const double ct = std::cos(theta);
                const double py_arg = two_pi * ct * std::sin(phi) * dy;
                const double pz_arg = two_pi * std::sin(theta) * dz;
                const cdouble pz(std::cos(pz_arg), std::sin(pz_arg));
                // Phasor for iz = -(mz-1) then stepped upward.
                const double z0 = -(mz - 1) * pz_arg;
                const cdouble zstart(std::cos(z0), std::sin(z0));
                for (int iy = 0; iy < my; ++iy)
                {
                    const double ya = iy * py_arg;
                    const cdouble wy = w * cdouble(std::cos(ya), std::sin(ya));
                    cdouble zp = zstart;
                    for (int iz = -(mz - 1); iz < mz; ++iz, zp *= pz)
                    {
                        if (iy == 0 && iz < 0)
                            continue;
                        out[grid.index(iy, iz)] = wy * zp;
                    }
                }
            };
            values += integrate_2d(g, dim, f.phi_breaks, f.theta_breaks, part_opts).value;
        }

        const Index M = geometry.size();
        CMatrix R(M, M);
        for (Index n = 0; n < M; ++n)
            for (Index m = 0; m < M; ++m)
            {
                int iy = geometry.row(n) - geometry.row(m);
                int iz = geometry.column(n) - geometry.column(m);
                const bool flip = iy < 0 || (iy == 0 && iz < 0);
                if (flip)
                {
                    iy = -iy;
                    iz = -iz;
                }
                const cdouble v = values(grid.index(iy, iz));
                R(n, m) = flip ? std::conj(v) : v;
            }
        // The zero offset is real up to rounding; make the diagonal exactly so.
        for (Index n = 0; n < M; ++n)
            R(n, n) = R(n, n).real();
        return R;
    }

    CovarianceMatrix iso_matrix(const UpaGeometry &geometry, double tol)
    {
        const int my = geometry.m_y(), mz = geometry.m_z();
        RMatrix table(my, mz);
        std::vector<Vec3> far;
        std::vector<std::pair<int, int>> far_index;
        for (int iy = 0; iy < my; ++iy)
            for (int iz = 0; iz < mz; ++iz)
            {
                const double sy = iy * geometry.d_y(), sz = iz * geometry.d_z();
                if (std::hypot(sy, sz) <= kSeriesRadius)
                    table(iy, iz) = iso_entry(sy, sz, tol).value;
                else
                {
                    far.emplace_back(0.0, sy, sz);
                    far_index.emplace_back(iy, iz);
                }
            }
        if (!far.empty())
        {
            QuadratureOptions opts;
            opts.abs_tol = std::min(tol, 1e-12);
            const CVector v = quadrature_entries(isotropic_scattering(), far, opts);
            for (size_t i = 0; i < far.size(); ++i)
                table(far_index[i].first, far_index[i].second) = v(static_cast<Index>(i)).real();
        }

        const Index M = geometry.size();
        CMatrix R(M, M);
        for (Index n = 0; n < M; ++n)
            for (Index m = 0; m < M; ++m)
                R(n, m) = table(std::abs(geometry.row(n) - geometry.row(m)),
                                std::abs(geometry.column(n) - geometry.column(m)));
        return CovarianceMatrix(R, CovarianceKind::isotropic);
    }

    double cluster_log_shape(const Cluster &c, double delta, double eps)
    {
        const double ct = std::abs(std::cos(c.elevation + eps));
        const double sd = std::sin(delta), se = std::sin(eps);
        // (cos 2x - 1) / (4 s^2) = -sin^2(x) / (2 s^2)
        return 4.0 * std::log(ct) - sd * sd / (2.0 * c.sigma_phi * c.sigma_phi) -
               se * se / (2.0 * c.sigma_theta * c.sigma_theta);
    }

    namespace
    {
        double peak_log_factor(const Cluster &c)
        {
            return 1.0 / (4.0 * c.sigma_phi * c.sigma_phi) + 1.0 / (4.0 * c.sigma_theta * c.sigma_theta);
        }

        void validate_cluster(const Cluster &c)
        {
            if (!(c.power >= 0.0) || !std::isfinite(c.power))
                throw DomainError("ClusterScenario: cluster power must be nonnegative");
            if (!(c.sigma_phi > 0.0) || !(c.sigma_theta > 0.0))
                throw DomainError("ClusterScenario: angular spreads must be positive");
            if (!std::isfinite(c.azimuth) || !std::isfinite(c.elevation))
                throw DomainError("ClusterScenario: angles must be finite");
        }
    }

    ClusterScenario::ClusterScenario(std::vector<Cluster> clusters, const QuadratureOptions &opts)
        : clusters_(std::move(clusters))
    {
        if (clusters_.empty())
            throw DomainError("ClusterScenario: at least one cluster is required");
        double total = 0.0;
        for (const auto &c : clusters_)
        {
            validate_cluster(c);
            total += c.power;
        }
        if (!(total > 0.0))
            throw DomainError("ClusterScenario: total power must be positive");
        for (auto &c : clusters_)
            c.power /= total;

        // log A = -log sum_n P_n exp(peak_n) I_n, with I_n the integral of the shape factor.
        std::vector<double> terms;
        for (const auto &c : clusters_)
        {
            if (c.power == 0.0)
                continue;
            QuadratureOptions o = opts;
            o.abs_tol = opts.abs_tol * two_pi * c.sigma_phi * c.sigma_theta;
            const double integral = integrate_2d_real(
                [&](double d, double e) { return std::exp(cluster_log_shape(c, d, e)); },
                peak_breaks(-half_pi, half_pi, 0.0, c.sigma_phi), peak_breaks(-half_pi, half_pi, 0.0, c.sigma_theta),
                o);
            if (!(integral > 0.0))
                throw DomainError("ClusterScenario: cluster has zero integrated power");
            terms.push_back(std::log(c.power) + peak_log_factor(c) + std::log(integral));
        }
        const double top = *std::max_element(terms.begin(), terms.end());
        double s = 0.0;
        for (double t : terms)
            s += std::exp(t - top);
        log_normalization_ = -(top + std::log(s));
    }

    double ClusterScenario::normalization() const { return std::exp(log_normalization_); }

    void ClusterScenario::write(std::ostream &out) const
    {
        out << "# power azimuth_deg elevation_deg sigma_phi_deg sigma_theta_deg\n";
        char buf[256];
        for (const auto &c : clusters_)
        {
            std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g %.17g\n", c.power, c.azimuth / deg,
                          c.elevation / deg, c.sigma_phi / deg, c.sigma_theta / deg);
            out << buf;
        }
    }

    ClusterScenario ClusterScenario::read(std::istream &in, const QuadratureOptions &opts)
    {
        std::vector<Cluster> clusters;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line))
        {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos)
                line.erase(hash);
            std::istringstream ss(line);
            double v[5];
            int count = 0;
            double x;
            while (ss >> x)
            {
                if (count < 5)
                    v[count] = x;
                ++count;
            }
            if (!ss.eof())
                throw ConfigError("scenario: malformed number", lineno);
            if (count == 0)
                continue;
            if (count != 5)
                throw ConfigError("scenario: expected 5 values per cluster line", lineno);
            clusters.push_back({v[0], v[1] * deg, v[2] * deg, v[3] * deg, v[4] * deg});
        }
        if (clusters.empty())
            throw ConfigError("scenario: no clusters found");
        try
        {
            return ClusterScenario(std::move(clusters), opts);
        }
        catch (const DomainError &e)
        {
            throw ConfigError(e.what());
        }
    }

    double cluster_scattering(const ClusterScenario &scenario, size_t n, double delta, double eps)
    {
        if (n >= scenario.size())
            throw IndexError("cluster_scattering: cluster index out of range");
        if (std::abs(delta) > half_pi || std::abs(eps) > half_pi)
            throw DomainError("cluster_scattering: offsets must lie in [-pi/2, pi/2]");
        const Cluster &c = scenario.clusters()[n];
        if (c.power == 0.0)
            return 0.0;
        return std::exp(scenario.log_normalization() + std::log(c.power) + peak_log_factor(c) +
                        cluster_log_shape(c, delta, eps));
    }

    ScatteringFunction cluster_part(const ClusterScenario &scenario, size_t n)
    {
        if (n >= scenario.size())
            throw IndexError("cluster_part: cluster index out of range");
        const Cluster c = scenario.clusters()[n];
        const double offset =
            c.power > 0.0 ? scenario.log_normalization() + std::log(c.power) + peak_log_factor(c)
                          : -std::numeric_limits<double>::infinity();
        ScatteringFunction f;
        f.density = [c, offset](double phi, double theta)
        { return std::exp(offset + cluster_log_shape(c, phi - c.azimuth, theta - c.elevation)); };
        f.phi_breaks = peak_breaks(c.azimuth - half_pi, c.azimuth + half_pi, c.azimuth, c.sigma_phi);
        f.theta_breaks = peak_breaks(c.elevation - half_pi, c.elevation + half_pi, c.elevation, c.sigma_theta);
        return f;
    }

    CovarianceMatrix cluster_matrix(const UpaGeometry &geometry, const ClusterScenario &scenario,
                                    const QuadratureOptions &opts)
    {
        std::vector<ScatteringFunction> parts;
        for (size_t n = 0; n < scenario.size(); ++n)
            if (scenario.clusters()[n].power > 0.0)
                parts.push_back(cluster_part(scenario, n));
        return CovarianceMatrix(quadrature_correlation(geometry, parts, opts), CovarianceKind::cluster);
    }
}
