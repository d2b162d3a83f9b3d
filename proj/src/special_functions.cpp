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

#include "holoest/special_functions.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <limits>

#include "holoest/errors.hpp"
#include "holoest/types.hpp"

namespace holoest
{
    namespace
    {
        constexpr double series_limit = 6.0;

        // Si and Ci power series. Terms peak near n ~ x/2, so at x = 6 the
        // cancellation costs about two decimal digits.
        double si_series(double x)
        {
            const double x2 = x * x;
            double term = x; // x^{2n+1} / (2n+1)!
            double sum = x;
            for (int n = 1; n < 60; ++n)
            {
                term *= -x2 / ((2.0 * n) * (2.0 * n + 1.0));
                const double add = term / (2.0 * n + 1.0);
                sum += add;
                if (std::abs(add) < 1e-18 * std::abs(sum))
                    break;
            }
            return sum;
        }

        double ci_series(double x)
        {
            const double x2 = x * x;
            double term = 1.0; // x^{2n} / (2n)!
            double sum = 0.0;
            for (int n = 1; n < 60; ++n)
            {
                term *= -x2 / ((2.0 * n - 1.0) * (2.0 * n));
                const double add = term / (2.0 * n);
                sum += add;
                if (std::abs(add) < 1e-18 * (std::abs(sum) + 1e-300))
                    break;
            }
            return constants::euler_gamma + std::log(x) + sum;
        }

        // Modified Lentz evaluation of the continued fraction for E1(ix):
        // returns (Ci(x), Si(x)) for x > series_limit.
        std::pair<double, double> cisi_continued_fraction(double x)
        {
            constexpr double tiny = 1e-300;
            constexpr double eps = 1e-17;
            std::complex<double> b(1.0, x);
            std::complex<double> c(1.0 / tiny, 0.0);
            std::complex<double> d = 1.0 / b;
            std::complex<double> h = d;
            for (int i = 2; i < 100000; ++i)
            {
                const double a = -static_cast<double>((i - 1) * (i - 1));
                b += 2.0;
                d = 1.0 / (a * d + b);
                c = b + a / c;
                const std::complex<double> del = c * d;
                h *= del;
                if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < eps)
                    break;
            }
            h *= std::complex<double>(std::cos(x), -std::sin(x));
            return {-h.real(), constants::pi / 2.0 + h.imag()};
        }

        struct LogFactorialTable
        {
            static constexpr int size = 1024;
            std::array<double, size> values{};

            LogFactorialTable()
            {
                values[0] = 0.0;
                for (int n = 1; n < size; ++n)
                    values[n] = values[n - 1] + std::log(static_cast<double>(n));
            }
        };
    }

    double sin_integral(double x)
    {
        if (x == 0.0)
            return 0.0;
        const double ax = std::abs(x);
        double value;
        if (ax <= series_limit)
            value = si_series(ax);
        else
            value = cisi_continued_fraction(ax).second;
        return x < 0.0 ? -value : value;
    }

    double cos_integral(double x)
    {
        if (!(x > 0.0))
            throw DomainError("cos_integral: argument must be positive");
        if (x <= series_limit)
            return ci_series(x);
        return cisi_continued_fraction(x).first;
    }

    double log_factorial(int n)
    {
        static const LogFactorialTable table;
        if (n < 0)
            throw DomainError("log_factorial: negative argument");
        if (n < LogFactorialTable::size)
            return table.values[n];
        const double nn = static_cast<double>(n);
        return nn * std::log(nn) - nn + 0.5 * std::log(2.0 * constants::pi * nn) + 1.0 / (12.0 * nn) -
               1.0 / (360.0 * nn * nn * nn);
    }

    SignedLog log_alpha_magnitude(int k, int l)
    {
        if (k < 0 || l < 0 || l > k)
            throw DomainError("log_alpha_magnitude: requires 0 <= l <= k");

        const double log_pi = std::log(constants::pi);
        double value = std::log(constants::dipole_directivity / (2.0 * constants::pi));
        value += (2.0 * k + 2.0) * log_pi;
        value += log_factorial(2 * l + 4);
        value -= (l + 2.0) * std::log(4.0);
        value -= log_factorial(l + 2);
        value -= log_factorial(k + 2);
        value -= 2.0 * log_factorial(l);
        value -= log_factorial(k - l);

        return {k % 2 == 0 ? 1 : -1, value};
    }
}
