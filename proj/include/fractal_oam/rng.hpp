// SPDX-License-Identifier: Apache-2.0
//
// fractal-oam  Numerical simulator for fractal OAM radio links over uniform circular arrays
// Copyright (C) 2026 the fractal-oam authors
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

#ifndef FRACTAL_OAM_RNG_HPP
#define FRACTAL_OAM_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>

namespace fractal_oam
{
    // SplitMix64 finalizer (Steele, Lea, Flood 2014).
    inline std::uint64_t mix64(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // Stateless counter-based generator: a SplitMix64-keyed stream addressed by
    // a 64-bit counter. Streams are keyed by (seed, stream); every draw is a
    // pure function of (seed, stream, counter), so parallel consumers get
    // identical values regardless of scheduling or thread count.
    class CounterRng
    {
    public:
        CounterRng(std::uint64_t seed, std::uint64_t stream)
            : key_(mix64(mix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL + 0x2545f4914f6cdd1dULL)))
        {
        }

        std::uint64_t bits(std::uint64_t counter) const
        {
            return mix64(key_ ^ (counter * 0x9e3779b97f4a7c15ULL));
        }

        // Uniform in [0, 1), 53-bit resolution.
        double uniform(std::uint64_t counter) const
        {
            return double(bits(counter) >> 11) * 0x1.0p-53;
        }

        // Independent standard normal pair (Box-Muller), consuming counters
        // 2*index and 2*index + 1.
        std::pair<double, double> normal_pair(std::uint64_t index) const
        {
            const double u1 = 1.0 - uniform(2 * index);     // (0, 1]
            const double u2 = uniform(2 * index + 1);       // [0, 1)
            const double r = std::sqrt(-2.0 * std::log(u1));
            const double theta = 2.0 * M_PI * u2;
            return {r * std::cos(theta), r * std::sin(theta)};
        }

        // Circularly symmetric complex Gaussian with E|n|^2 = variance.
        std::complex<double> complex_gaussian(std::uint64_t index, double variance) const
        {
            const auto [g0, g1] = normal_pair(index);
            const double s = std::sqrt(variance / 2.0);
            return {s * g0, s * g1};
        }

    private:
        std::uint64_t key_;
    };
}

#endif
