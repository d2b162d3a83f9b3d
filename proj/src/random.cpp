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

#include "holoest/random.hpp"

namespace holoest
{
    std::uint64_t mix64(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t stream_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b)
    {
        return mix64(mix64(mix64(seed) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
    }

    double RandomStream::uniform(double lo, double hi)
    {
        std::uniform_real_distribution<double> u(lo, hi);
        return u(engine_);
    }

    cdouble RandomStream::complex_normal()
    {
        const double re = normal_(engine_);
        const double im = normal_(engine_);
        return {re, im};
    }

    void RandomStream::fill_complex_normal(CMatrix &out)
    {
        for (Index j = 0; j < out.cols(); ++j)
            for (Index i = 0; i < out.rows(); ++i)
                out(i, j) = complex_normal();
    }

    void RandomStream::fill_complex_normal(CVector &out)
    {
        for (Index i = 0; i < out.size(); ++i)
            out(i) = complex_normal();
    }
}
