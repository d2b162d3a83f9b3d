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

#ifndef HOLOEST_SPECIAL_FUNCTIONS_HPP
#define HOLOEST_SPECIAL_FUNCTIONS_HPP

namespace holoest
{
    /// Sine integral Si(x) = int_0^x sin(t)/t dt.
    /// Power series for |x| <= 6, continued fraction of E1(ix) beyond.
    double sin_integral(double x);

    /// Cosine integral Ci(x) = -int_x^inf cos(t)/t dt, defined for x > 0.
    /// Throws DomainError for x <= 0.
    double cos_integral(double x);

    struct SignedLog
    {
        int sign;            // +1 or -1
        double log_magnitude; // natural log of |value|
    };

    /// Coefficient of d_z^{2(k-l)} d_y^{2l} in the power series of the isotropic
    /// dipole correlation (separations in wavelengths).
    ///
    /// The closed form
    ///   (-1)^k / (2k)! C(2k,2l) C(2l,l) C(2k-2l,k-l) pi^{2k+2} (1.67/2pi)
    ///       (2l+3)!! / [(2k+4)(2k+2)...(2k-2l+2)]
    /// simplifies to
    ///   (-1)^k (1.67/2pi) pi^{2k+2} (2l+4)! / [4^{l+2} (l+2)! (k+2)! (l!)^2 (k-l)!]
    /// which is evaluated with log-factorials so large k never overflows.
    /// Throws DomainError when l > k or either index is negative.
    SignedLog log_alpha_magnitude(int k, int l);

    /// Natural log of n!, tabulated for n < 1024 and Stirling-corrected beyond.
    double log_factorial(int n);
}

#endif
