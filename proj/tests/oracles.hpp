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

#ifndef HOLOEST_TEST_ORACLES_HPP
#define HOLOEST_TEST_ORACLES_HPP

// Independent reference computations used by the tests. Nothing here calls
// into the library.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle
{
    constexpr double pi = std::numbers::pi;
    constexpr double euler_gamma = 0.57721566490153286060651209;
    // CODATA 2018 vacuum permeability, as used by the library.
    constexpr double mu0 = 1.25663706212e-6;
    constexpr double eta = mu0 * 299792458.0;

    // Maclaurin series of Si in long double.
    inline double si_series(double x, int terms = 200)
    {
        long double sum = 0.0L, term = x; // x^{2n+1} / (2n+1)!
        for (int n = 0; n < terms; ++n)
        {
            sum += term / (2 * n + 1);
            term *= -static_cast<long double>(x) * x / ((2.0L * n + 2) * (2.0L * n + 3));
        }
        return static_cast<double>(sum);
    }

    // gamma + ln x + sum_{n>=1} (-1)^n x^{2n} / (2n (2n)!).
    inline double ci_series(double x, int terms = 200)
    {
        long double sum = 0.0L, term = 1.0L; // x^{2n} / (2n)!
        for (int n = 1; n < terms; ++n)
        {
            term *= -static_cast<long double>(x) * x / ((2.0L * n - 1) * (2.0L * n));
            sum += term / (2 * n);
        }
        return static_cast<double>(euler_gamma + std::log(static_cast<long double>(x)) + sum);
    }

    // Asymptotic auxiliary functions f, g with Si = pi/2 - f cos x - g sin x and
    // Ci = f sin x - g cos x. Accurate to double precision for x >= 50.
    inline std::pair<double, double> aux_fg(double x)
    {
        long double f = 0.0L, g = 0.0L, tf = 1.0L / x, tg = 1.0L / (static_cast<long double>(x) * x);
        for (int n = 0; n < 20; ++n)
        {
            f += tf;
            g += tg;
            tf *= -(2.0L * n + 1) * (2.0L * n + 2) / (static_cast<long double>(x) * x);
            tg *= -(2.0L * n + 2) * (2.0L * n + 3) / (static_cast<long double>(x) * x);
        }
        return {static_cast<double>(f), static_cast<double>(g)};
    }

    // Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
    inline void gauss_legendre(int n, std::vector<double> &x, std::vector<double> &w)
    {
        x.assign(n, 0.0);
        w.assign(n, 0.0);
        for (int i = 0; i < (n + 1) / 2; ++i)
        {
            double z = std::cos(pi * (i + 0.75) / (n + 0.5)), dp = 0.0;
            for (int it = 0; it < 100; ++it)
            {
                double p0 = 1.0, p1 = z;
                for (int k = 2; k <= n; ++k)
                {
                    const double p2 = ((2.0 * k - 1) * z * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (z * p1 - p0) / (z * z - 1.0);
                const double dz = p1 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-16)
                    break;
            }
            x[i] = -z;
            x[n - 1 - i] = z;
            w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
    }

    // Composite Gauss-Legendre on [a, b] with `panels` equal panels.
    template <class T>
    T integrate(const std::function<T(double)> &f, double a, double b, int panels = 64, int order = 20)
    {
        std::vector<double> x, w;
        gauss_legendre(order, x, w);
        T sum{};
        const double h = (b - a) / panels;
        for (int p = 0; p < panels; ++p)
        {
            const double lo = a + p * h;
            for (int i = 0; i < order; ++i)
                sum += f(lo + 0.5 * h * (x[i] + 1.0)) * (0.5 * h * w[i]);
        }
        return sum;
    }

    // Isotropic dipole correlation at separation (dy, dz) in wavelengths. The
    // azimuth integral is done analytically: int_{-pi/2}^{pi/2} exp(j a sin phi) dphi = pi J0(a).
    inline double iso_correlation(double dy, double dz)
    {
        const std::function<double(double)> f = [&](double t)
        {
            const double c = std::cos(t);
            return c * c * c * c * std::cyl_bessel_j(0.0, 2.0 * pi * dy * c) * std::cos(2.0 * pi * dz * std::sin(t));
        };
        return 1.67 / 2.0 * integrate(f, -pi / 2.0, pi / 2.0, 128, 20);
    }

    // Exact rational evaluation of the series coefficient in its binomial form:
    //   (-1)^k / (2k)! C(2k,2l) C(2l,l) C(2k-2l,k-l) pi^{2k+2} (1.67/2pi)
    //       (2l+3)!! / [(2k+4)(2k+2)...(2k-2l+2)]
    inline double alpha_exact(int k, int l)
    {
        using i128 = __int128;
        const auto binom = [](int n, int r)
        {
            i128 b = 1;
            for (int i = 1; i <= r; ++i)
                b = b * (n - r + i) / i;
            return b;
        };
        const auto gcd = [](i128 a, i128 b)
        {
            if (a < 0)
                a = -a;
            while (b != 0)
            {
                const i128 t = a % b;
                a = b;
                b = t;
            }
            return a;
        };
        i128 num = 1, den = 1;
        const auto mul = [&](i128 &target, i128 factor)
        {
            target *= factor;
            const i128 g = gcd(num, den);
            num /= g;
            den /= g;
        };
        mul(num, binom(2 * k, 2 * l));
        mul(num, binom(2 * l, l));
        mul(num, binom(2 * k - 2 * l, k - l));
        for (int i = 2 * l + 3; i >= 1; i -= 2)
            mul(num, i);
        for (int i = 1; i <= 2 * k; ++i)
            mul(den, i);
        for (int j = 2 * k + 4; j >= 2 * k - 2 * l + 2; j -= 2)
            mul(den, j);
        const long double ratio = static_cast<long double>(num) / static_cast<long double>(den);
        const long double value = ratio * std::pow(static_cast<long double>(pi), 2 * k + 2) * 1.67L /
                                  (2.0L * static_cast<long double>(pi));
        return static_cast<double>(k % 2 == 0 ? value : -value);
    }

    // Induced-EMF mutual impedance of two parallel z-directed dipoles of length
    // l (wavelengths) with sinusoidal currents referred to the current maximum,
    // horizontal distance d and vertical center offset h, by direct integration
    // of the near field of dipole 1 along dipole 2.
    inline std::complex<double> induced_emf(double d, double h, double l, int panels = 400)
    {
        const double k = 2.0 * pi, L = 0.5 * l;
        const std::complex<double> J(0.0, 1.0);
        const auto green = [&](double z0, double z)
        {
            const double R = std::hypot(d, z - z0);
            return std::exp(-J * k * R) / R;
        };
        const std::function<std::complex<double>(double)> integrand = [&](double z)
        {
            const std::complex<double> field = green(L, z) + green(-L, z) - 2.0 * std::cos(k * L) * green(0.0, z);
            return field * std::sin(k * (L - std::abs(z - h)));
        };
        // Split at the current peak of dipole 2 so the kink is on a panel edge.
        const std::complex<double> total =
            integrate(integrand, h - L, h, panels, 20) + integrate(integrand, h, h + L, panels, 20);
        return J * eta / (4.0 * pi) * total / std::pow(std::sin(k * L), 2);
    }
}

#endif
