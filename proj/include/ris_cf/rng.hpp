// SPDX-License-Identifier: Apache-2.0
//
// ris_cf: joint active/passive precoding for RIS-aided cell-free downlink
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


#ifndef RIS_CF_RNG_HPP
#define RIS_CF_RNG_HPP

#include <cmath>
#include <cstdint>
#include <complex>
#include <initializer_list>
#include <numbers>
#include <random>

namespace ris_cf {

// Stream tags. Every random draw in a simulation cell comes from a stream
// keyed by (cell seed, tag, indices...), so draws for one link never depend
// on how many draws another link consumed.
enum class Stream : std::uint64_t
{
    UserPlacement = 1,
    DirectChannel = 2,  // indices: b, k, p
    RisUserChannel = 3, // indices: r, k, p
    InitPhases = 4,
    InitPrecoder = 5,
    Sweep = 6, // indices: L index, trial
    Test = 7,
};

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seedable generator built on mt19937_64. Uniform and Gaussian variates are
/// derived from raw 64-bit outputs here instead of std distributions, whose
/// algorithms are implementation-defined, so streams match across standard
/// libraries.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

    std::uint64_t seed() const { return seed_; }

    /// Child generator for a tagged stream.
    Rng split(Stream tag, std::initializer_list<std::uint64_t> indices = {}) const
    {
        std::uint64_t s = splitmix64(seed_ ^ splitmix64(static_cast<std::uint64_t>(tag)));
        for (auto i : indices)
            s = splitmix64(s ^ splitmix64(i + 0x632BE59BD9B4E019ULL));
        return Rng(s);
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (one variate per call, no caching).
    double normal()
    {
        double u1 = 0.0;
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Circularly-symmetric complex Gaussian with E|z|^2 = 1.
    std::complex<double> complex_normal()
    {
        const double re = normal();
        const double im = normal();
        return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
    }

    double phase() { return 2.0 * std::numbers::pi * uniform(); }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace ris_cf

#endif
