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

#include <catch_amalgamated.hpp>

#include <cmath>

#include "holoest/errors.hpp"
#include "holoest/special_functions.hpp"
#include "oracles.hpp"

using namespace holoest;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("sine integral at small arguments matches the Maclaurin series", "[special]")
{
    CHECK(sin_integral(0.0) == 0.0);
    CHECK_THAT(sin_integral(1.0), WithinAbs(0.9460830704, 1e-10));
    for (double x = 0.05; x <= 15.0; x += 0.173)
    {
        INFO("x = " << x);
        CHECK_THAT(sin_integral(x), WithinAbs(oracle::si_series(x), 1e-10));
    }
}

TEST_CASE("cosine integral at small arguments matches the Maclaurin series", "[special]")
{
    CHECK_THAT(cos_integral(1.0), WithinAbs(0.3374039229, 1e-10));
    for (double x = 0.05; x <= 15.0; x += 0.173)
    {
        INFO("x = " << x);
        CHECK_THAT(cos_integral(x), WithinAbs(oracle::ci_series(x), 1e-10));
    }
}

TEST_CASE("Si and Ci at large arguments match the asymptotic expansion", "[special]")
{
    for (double x : {50.0, 73.3, 120.0, 333.0, 999.0, 1000.0})
    {
        const auto [f, g] = oracle::aux_fg(x);
        INFO("x = " << x);
        CHECK_THAT(sin_integral(x), WithinAbs(oracle::pi / 2 - f * std::cos(x) - g * std::sin(x), 1e-10));
        CHECK_THAT(cos_integral(x), WithinAbs(f * std::sin(x) - g * std::cos(x), 1e-10));
    }
}

TEST_CASE("Si and Ci limits", "[special]")
{
    CHECK_THAT(sin_integral(1e6), WithinAbs(oracle::pi / 2, 1e-5));
    CHECK_THAT(cos_integral(1e6), WithinAbs(0.0, 1e-5));
    CHECK_THAT(cos_integral(1e-6), WithinAbs(oracle::euler_gamma + std::log(1e-6), 1e-10));
    CHECK_THAT(cos_integral(1e-8), WithinAbs(oracle::euler_gamma + std::log(1e-8), 1e-10));
}

TEST_CASE("Si and Ci agree across the branch switch", "[special]")
{
    for (double x : {5.999999, 6.0, 6.000001})
    {
        CHECK_THAT(sin_integral(x), WithinAbs(oracle::si_series(x), 1e-10));
        CHECK_THAT(cos_integral(x), WithinAbs(oracle::ci_series(x), 1e-10));
    }
    CHECK_THAT(sin_integral(6.0 - 1e-12), WithinAbs(sin_integral(6.0 + 1e-12), 1e-10));
    CHECK_THAT(cos_integral(6.0 - 1e-12), WithinAbs(cos_integral(6.0 + 1e-12), 1e-10));
}

TEST_CASE("Si is odd", "[special][property]")
{
    for (double x : {1e-9, 0.3, 1.0, 5.9, 6.1, 17.0, 250.0, 1e5})
        CHECK(sin_integral(-x) == -sin_integral(x));
}

TEST_CASE("Ci rejects non-positive arguments", "[special]")
{
    CHECK_THROWS_AS(cos_integral(0.0), DomainError);
    CHECK_THROWS_AS(cos_integral(-1.0), DomainError);
}

TEST_CASE("derivatives of Si and Ci match central differences", "[special][property]")
{
    const double h = 1e-5;
    for (double x = 0.1; x <= 100.0; x *= 1.13)
    {
        INFO("x = " << x);
        const double dsi = (sin_integral(x + h) - sin_integral(x - h)) / (2 * h);
        const double dci = (cos_integral(x + h) - cos_integral(x - h)) / (2 * h);
        CHECK_THAT(dsi, WithinAbs(std::sin(x) / x, 1e-6));
        CHECK_THAT(dci, WithinAbs(std::cos(x) / x, 1e-6));
    }
}

TEST_CASE("series coefficients match the exact binomial form", "[special][property]")
{
    for (int k = 0; k <= 8; ++k)
        for (int l = 0; l <= k; ++l)
        {
            INFO("k = " << k << ", l = " << l);
            const SignedLog a = log_alpha_magnitude(k, l);
            CHECK(a.sign == (k % 2 == 0 ? 1 : -1));
            CHECK_THAT(a.sign * std::exp(a.log_magnitude), WithinRel(oracle::alpha_exact(k, l), 1e-12));
        }
}

TEST_CASE("leading coefficient is the zero-separation correlation", "[special]")
{
    const SignedLog a = log_alpha_magnitude(0, 0);
    CHECK(a.sign == 1);
    CHECK_THAT(std::exp(a.log_magnitude), WithinRel(1.67 * 3.0 * oracle::pi / 16.0, 1e-14));
    CHECK(log_alpha_magnitude(1, 0).sign == -1);
}

TEST_CASE("series coefficients stay finite far beyond factorial overflow", "[special]")
{
    const SignedLog a = log_alpha_magnitude(200, 100);
    CHECK(std::isfinite(a.log_magnitude));
    CHECK(a.sign == 1);
    CHECK_THAT(log_factorial(170), WithinRel(std::lgamma(171.0), 1e-13));
    CHECK_THAT(log_factorial(5000), WithinRel(std::lgamma(5001.0), 1e-13));
    CHECK(log_factorial(0) == 0.0);
}

TEST_CASE("series coefficient index errors", "[special]")
{
    CHECK_THROWS_AS(log_alpha_magnitude(2, 3), DomainError);
    CHECK_THROWS_AS(log_alpha_magnitude(-1, 0), DomainError);
}
