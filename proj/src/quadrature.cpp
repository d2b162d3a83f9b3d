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

#include "holoest/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>

#include "holoest/errors.hpp"

namespace holoest
{
    namespace
    {
        // Kronrod abscissae (descending) and weights; the Gauss points are the odd entries.
        constexpr std::array<double, 8> xgk = {
            0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
        constexpr std::array<double, 8> wgk = {
            0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
        constexpr std::array<double, 4> wg = {
            0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
            0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

        constexpr int npts = 15;

        struct Rule
        {
            std::array<double, npts> t;  // nodes on [-1, 1]
            std::array<double, npts> wk; // Kronrod weights
            std::array<double, npts> wg; // Gauss weights (zero off the Gauss nodes)
        };

        Rule make_rule()
        {
            Rule r{};
            for (int i = 0; i < 7; ++i)
            {
                r.t[i] = -xgk[i];
                r.t[npts - 1 - i] = xgk[i];
                r.wk[i] = r.wk[npts - 1 - i] = wgk[i];
                const double g = (i % 2 == 1) ? wg[i / 2] : 0.0;
                r.wg[i] = r.wg[npts - 1 - i] = g;
            }
            r.t[7] = 0.0;
            r.wk[7] = wgk[7];
            r.wg[7] = wg[3];
            return r;
        }

        const Rule &rule()
        {
            static const Rule r = make_rule();
            return r;
        }

        struct Region
        {
            double x0, x1, y0, y1;
            CVector value;
            double error;
            double error_x; // error estimate attributable to the x direction
            double error_y;
            bool active;
        };

        class Integrator
        {
        public:
            Integrator(const VectorIntegrand &f, Index dim)
                : f_(f), dim_(dim), grid_(dim * npts * npts), ak_(dim * npts), ag_(dim * npts)
            {
            }

            Region evaluate(double x0, double x1, double y0, double y1)
            {
                const Rule &r = rule();
                const double cx = 0.5 * (x0 + x1), hx = 0.5 * (x1 - x0);
                const double cy = 0.5 * (y0 + y1), hy = 0.5 * (y1 - y0);
                for (int i = 0; i < npts; ++i)
                    for (int j = 0; j < npts; ++j)
                        f_(cx + hx * r.t[i], cy + hy * r.t[j], grid_.data() + (i * npts + j) * dim_);
                evaluations_ += npts * npts;

                // Reduce over y with both rules, then over x.
                ak_.setZero();
                ag_.setZero();
                for (int i = 0; i < npts; ++i)
                    for (int j = 0; j < npts; ++j)
                    {
                        const cdouble *v = grid_.data() + (i * npts + j) * dim_;
                        cdouble *pk = ak_.data() + i * dim_;
                        cdouble *pg = ag_.data() + i * dim_;
                        const double wk = r.wk[j], wgj = r.wg[j];
                        for (Index c = 0; c < dim_; ++c)
                            pk[c] += wk * v[c];
                        if (wgj != 0.0)
                            for (Index c = 0; c < dim_; ++c)
                                pg[c] += wgj * v[c];
                    }

                Region reg{x0, x1, y0, y1, CVector::Zero(dim_), 0.0, 0.0, 0.0, true};
                const double area = hx * hy;
                double err = 0.0, ex = 0.0, ey = 0.0;
                for (Index c = 0; c < dim_; ++c)
                {
                    cdouble kk = 0.0, gk = 0.0, kg = 0.0, gg = 0.0;
                    for (int i = 0; i < npts; ++i)
                    {
                        const cdouble a = ak_(i * dim_ + c), b = ag_(i * dim_ + c);
                        kk += r.wk[i] * a;
                        gk += r.wg[i] * a;
                        kg += r.wk[i] * b;
                        gg += r.wg[i] * b;
                    }
                    reg.value(c) = area * kk;
                    err = std::max(err, area * std::abs(kk - gg));
                    ex = std::max(ex, area * std::abs(kk - gk));
                    ey = std::max(ey, area * std::abs(kk - kg));
                }
                reg.error = err;
                reg.error_x = ex;
                reg.error_y = ey;
                return reg;
            }

            long evaluations() const { return evaluations_; }

        private:
            const VectorIntegrand &f_;
            Index dim_;
            CVector grid_, ak_, ag_;
            long evaluations_ = 0;
        };

        std::vector<double> sorted_breaks(const std::vector<double> &b, const char *axis)
        {
            std::vector<double> s(b);
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
            if (s.size() < 2 || !(s.back() > s.front()) || !std::isfinite(s.front()) || !std::isfinite(s.back()))
                throw DomainError(std::string("integrate_2d: invalid ") + axis + " breakpoints");
            return s;
        }
    }

    QuadratureResult integrate_2d(const VectorIntegrand &f, Index dim, const std::vector<double> &x_breaks,
                                  const std::vector<double> &y_breaks, const QuadratureOptions &opts)
    {
        if (dim < 1)
            throw DomainError("integrate_2d: dimension must be positive");
        if (!(opts.abs_tol > 0.0))
            throw DomainError("integrate_2d: tolerance must be positive");

        const auto xs = sorted_breaks(x_breaks, "x");
        const auto ys = sorted_breaks(y_breaks, "y");

        Integrator integrator(f, dim);
        std::vector<Region> regions;
        using Entry = std::pair<double, size_t>;
        std::priority_queue<Entry> queue;
        double total_error = 0.0;

        auto push = [&](Region &&reg)
        {
            if (!std::isfinite(reg.error) || !reg.value.allFinite())
                throw IntegrationError("integrate_2d: integrand is not finite", reg.error);
            total_error += reg.error;
            regions.push_back(std::move(reg));
            queue.emplace(regions.back().error, regions.size() - 1);
        };

        for (size_t i = 0; i + 1 < xs.size(); ++i)
            for (size_t j = 0; j + 1 < ys.size(); ++j)
                push(integrator.evaluate(xs[i], xs[i + 1], ys[j], ys[j + 1]));

        int active = static_cast<int>(regions.size());
        auto exact_error = [&]()
        {
            double s = 0.0;
            for (const auto &r : regions)
                if (r.active)
                    s += r.error;
            return s;
        };

        while (true)
        {
            if (total_error <= opts.abs_tol)
            {
                total_error = exact_error();
                if (total_error <= opts.abs_tol)
                    break;
            }
            if (active >= opts.max_regions)
                break;

            const size_t idx = queue.top().second;
            queue.pop();
            Region &parent = regions[idx];
            parent.active = false;
            total_error -= parent.error;
            const double x0 = parent.x0, x1 = parent.x1, y0 = parent.y0, y1 = parent.y1;
            const bool split_x = parent.error_x >= parent.error_y;
            if (split_x)
            {
                const double xm = 0.5 * (x0 + x1);
                push(integrator.evaluate(x0, xm, y0, y1));
                push(integrator.evaluate(xm, x1, y0, y1));
            }
            else
            {
                const double ym = 0.5 * (y0 + y1);
                push(integrator.evaluate(x0, x1, y0, ym));
                push(integrator.evaluate(x0, x1, ym, y1));
            }
            ++active;
        }

        QuadratureResult out;
        out.value = CVector::Zero(dim);
        for (const auto &r : regions)
            if (r.active)
                out.value += r.value;
        out.error_estimate = exact_error();
        out.regions = active;
        out.evaluations = integrator.evaluations();

        if (out.error_estimate > 10.0 * opts.abs_tol)
        {
            std::ostringstream msg;
            msg << "integrate_2d: error estimate " << out.error_estimate << " exceeds target " << opts.abs_tol
                << " after " << active << " regions";
            throw IntegrationError(msg.str(), out.error_estimate);
        }
        return out;
    }

    double integrate_2d_real(const std::function<double(double, double)> &f, const std::vector<double> &x_breaks,
                             const std::vector<double> &y_breaks, const QuadratureOptions &opts)
    {
        const VectorIntegrand g = [&](double x, double y, cdouble *out) { out[0] = f(x, y); };
        return integrate_2d(g, 1, x_breaks, y_breaks, opts).value(0).real();
    }
}
