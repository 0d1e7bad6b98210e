// SPDX-License-Identifier: Apache-2.0
//
// smgee - energy-efficiency optimization for mmWave large-scale MIMO
// downlinks with spatial modulation and hybrid beamforming
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

#ifndef smgee_rng_H
#define smgee_rng_H

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace smgee {

// Counter-style stream derivation: the engine state for a given
// (seed, realization, link) triple depends on nothing else, so realization n
// comes out identical no matter how many threads generate the set or in
// which order. Sampling primitives below use explicit constructions instead
// of std::*_distribution so draws are bit-identical across standard
// libraries.

inline std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t realization,
                                std::uint64_t link) noexcept
{
    std::uint64_t z = mix64(seed + 0x9E3779B97F4A7C15ULL);
    z = mix64(z ^ (realization + 0x9E3779B97F4A7C15ULL));
    z = mix64(z ^ (link + 0xD1B54A32D192ED03ULL));
    return z;
}

inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t realization,
                                   std::uint64_t link)
{
    return std::mt19937_64(stream_key(seed, realization, link));
}

// uniform on [0, 1), 53 random bits
inline double uniform01(std::mt19937_64 &g)
{
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// uniform on (0, 2*pi]
inline double uniform_angle(std::mt19937_64 &g)
{
    return 2.0 * std::numbers::pi * (1.0 - uniform01(g));
}

// circularly-symmetric complex Gaussian with E|z|^2 = 1 (polar Box-Muller)
inline std::complex<double> complex_gaussian(std::mt19937_64 &g)
{
    const double r = std::sqrt(-std::log(1.0 - uniform01(g)));
    const double phi = 2.0 * std::numbers::pi * uniform01(g);
    return {r * std::cos(phi), r * std::sin(phi)};
}

} // namespace smgee

#endif
