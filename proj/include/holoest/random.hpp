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

#ifndef HOLOEST_RANDOM_HPP
#define HOLOEST_RANDOM_HPP

#include <cstdint>
#include <random>

#include "holoest/types.hpp"

namespace holoest
{
    /// splitmix64 finalizer.
    std::uint64_t mix64(std::uint64_t x);

    /// Seed of an independent stream keyed by (seed, a, b), e.g. (base seed, SNR index, trial index).
    std::uint64_t stream_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

    /// Mersenne twister stream that remembers its seed.
    class RandomStream
    {
    public:
        explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

        std::uint64_t seed() const { return seed_; }
        std::mt19937_64 &engine() { return engine_; }

        double uniform(double lo, double hi);

        /// Circularly symmetric complex Gaussian, unit variance (1/2 per component).
        cdouble complex_normal();
        void fill_complex_normal(CMatrix &out);
        void fill_complex_normal(CVector &out);

    private:
        std::uint64_t seed_;
        std::mt19937_64 engine_;
        std::normal_distribution<double> normal_{0.0, 0.70710678118654752440};
    };
}

#endif
