// SPDX-License-Identifier: Apache-2.0
//
// maopt: channel estimation, position selection and beamforming for
// multiuser wideband movable-antenna systems
// Copyright (C) 2026 The maopt authors
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

#ifndef MAOPT_RNG_HPP
#define MAOPT_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace maopt {

using Rng = std::mt19937_64;

// SplitMix64 finalizer. Used to derive per-trial and per-stream seeds so that
// results depend only on (base seed, indices) and never on scheduling.
constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for trial `trial` at sweep point `value_index`.
constexpr std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t value_index, std::uint64_t trial)
{
    return splitmix64(splitmix64(splitmix64(base_seed) ^ value_index) ^ trial);
}

/// Independent generator for a named sub-stream of one trial.
inline Rng make_stream(std::uint64_t seed, std::uint64_t stream)
{
    return Rng{splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL))};
}

/// Circularly-symmetric complex Gaussian sample with E|z|^2 = variance.
inline std::complex<double> complex_gaussian(Rng& rng, double variance)
{
    if (variance <= 0.0)
        return {0.0, 0.0};
    std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

} // namespace maopt

#endif
