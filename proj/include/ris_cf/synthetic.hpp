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


#ifndef RIS_CF_SYNTHETIC_HPP
#define RIS_CF_SYNTHETIC_HPP

// Unit-scale random instances for invariant checks. Channels are plain
// CN(0,1) draws with no geometry, so every block is generic.

#include "ris_cf/channel_model.hpp"
#include "ris_cf/rng.hpp"
#include "ris_cf/system_metrics.hpp"

#include <numbers>

namespace ris_cf {

struct Instance
{
    ScenarioConfig config;
    ChannelSet channels;
};

inline Instance random_instance(const Dims &d, Rng rng, double noise_power = 0.1)
{
    Instance inst;
    ScenarioConfig &c = inst.config;
    c.dims = d;
    for (std::size_t b = 0; b < d.B; ++b)
        c.bs_positions.push_back({0.0, 10.0 * static_cast<double>(b)});
    for (std::size_t r = 0; r < d.R; ++r)
        c.ris_positions.push_back({30.0, 5.0 * static_cast<double>(r)});
    c.p_max.resize(d.B);
    for (auto &p : c.p_max)
        p = 0.5 + rng.uniform();
    c.weights.resize(d.K);
    for (auto &w : c.weights)
        w = 0.5 + rng.uniform();
    c.noise_power = noise_power;
    c.seed = rng.seed();

    inst.channels = ChannelSet(d);
    for (std::size_t p = 0; p < d.P; ++p) {
        for (std::size_t b = 0; b < d.B; ++b)
            for (std::size_t k = 0; k < d.K; ++k)
                inst.channels.H(b, k, p) = sample_rayleigh(d.M, d.U, 1.0, rng.split(Stream::DirectChannel, {b, k, p}));
        for (std::size_t r = 0; r < d.R; ++r) {
            for (std::size_t k = 0; k < d.K; ++k)
                inst.channels.F(r, k, p) =
                    sample_rayleigh(d.N, d.U, 1.0, rng.split(Stream::RisUserChannel, {r, k, p}));
            for (std::size_t b = 0; b < d.B; ++b)
                inst.channels.G(b, r, p) = sample_rayleigh(d.N, d.M, 1.0, rng.split(Stream::Test, {b, r, p}));
        }
    }
    return inst;
}

/// Gaussian precoder rescaled so BS b spends a random fraction of p_max[b].
inline Precoder random_precoder(const ScenarioConfig &c, Rng &rng)
{
    Precoder W(c.dims);
    for (auto &w : W.vectors())
        for (Eigen::Index i = 0; i < w.size(); ++i)
            w(i) = rng.complex_normal();
    const RVector power = per_bs_power(W);
    for (std::size_t b = 0; b < c.dims.B; ++b) {
        const double scale = std::sqrt(rng.uniform() * c.p_max[b] / power(b));
        for (std::size_t p = 0; p < c.dims.P; ++p)
            for (std::size_t k = 0; k < c.dims.K; ++k)
                W.block(p, k, b) *= scale;
    }
    return W;
}

inline PhaseConfig random_phases(const Dims &d, Rng &rng, PhaseMode mode = PhaseMode::Relaxed)
{
    PhaseConfig ph;
    ph.mode = mode;
    ph.theta.resize(static_cast<Eigen::Index>(d.rn()));
    for (Eigen::Index n = 0; n < ph.theta.size(); ++n)
        ph.theta(n) = std::polar(mode == PhaseMode::Relaxed ? std::sqrt(rng.uniform()) : 1.0, rng.phase());
    return ph;
}

/// Random tiny dimensions within the given caps (R may be 0).
inline Dims random_dims(Rng &rng, std::size_t max_b, std::size_t max_r, std::size_t max_k, std::size_t max_p,
                        std::size_t max_m, std::size_t max_u, std::size_t max_n)
{
    auto pick = [&](std::size_t lo, std::size_t hi) { return lo + static_cast<std::size_t>(rng.uniform() * static_cast<double>(hi - lo + 1)); };
    return Dims{.B = pick(1, max_b), .R = pick(0, max_r), .K = pick(1, max_k), .P = pick(1, max_p),
                .M = pick(1, max_m), .U = pick(1, max_u), .N = pick(1, max_n)};
}

} // namespace ris_cf

#endif
