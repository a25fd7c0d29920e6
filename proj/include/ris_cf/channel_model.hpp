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


#ifndef RIS_CF_CHANNEL_MODEL_HPP
#define RIS_CF_CHANNEL_MODEL_HPP

#include "ris_cf/rng.hpp"
#include "ris_cf/types.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace ris_cf {

struct Point
{
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point &, const Point &) = default;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Log-distance attenuation: ref_loss_db at 1 m plus 10*exponent dB/decade.
struct LinkBudget
{
    double ref_loss_db = 30.0;
    double exponent = 3.0;

    friend bool operator==(const LinkBudget &, const LinkBudget &) = default;
};

struct ScenarioConfig
{
    Dims dims;
    std::vector<Point> bs_positions;
    std::vector<Point> ris_positions;
    Point user_center{40.0, 0.0};
    double user_radius = 1.0;
    std::vector<double> p_max;   // per BS, watts
    double noise_power = 1e-15;  // watts
    std::vector<double> weights; // per user
    LinkBudget bs_user{30.0, 3.0};
    LinkBudget bs_ris{20.0, 2.0};
    LinkBudget ris_user{20.0, 2.0};
    std::uint64_t seed = 1;

    friend bool operator==(const ScenarioConfig &, const ScenarioConfig &) = default;
};

inline void validate(const ScenarioConfig &c)
{
    validate(c.dims);
    if (c.bs_positions.size() != c.dims.B)
        throw std::invalid_argument("bs_positions must list one point per base station");
    if (c.ris_positions.size() != c.dims.R)
        throw std::invalid_argument("ris_positions must list one point per surface");
    if (c.p_max.size() != c.dims.B)
        throw std::invalid_argument("p_max must hold one budget per base station");
    for (double p : c.p_max)
        if (!(p > 0.0))
            throw std::invalid_argument("power budgets must be positive");
    if (!(c.noise_power > 0.0))
        throw std::invalid_argument("noise power must be positive");
    if (c.weights.size() != c.dims.K)
        throw std::invalid_argument("weights must hold one entry per user");
    for (double w : c.weights)
        if (!(w > 0.0))
            throw std::invalid_argument("user weights must be positive");
    for (const auto &lb : {c.bs_user, c.bs_ris, c.ris_user})
        if (!(lb.exponent > 0.0))
            throw std::invalid_argument("path-loss exponents must be positive");
    if (!(c.user_radius >= 0.0))
        throw std::invalid_argument("user radius must be non-negative");
}

/// Two BSs, two surfaces and four users with the §IV link parameters. The
/// Two BSs off the track near the origin, surfaces at 30 m and 50 m along it.
inline ScenarioConfig default_scenario()
{
    ScenarioConfig c;
    c.dims = Dims{.B = 2, .R = 2, .K = 4, .P = 6, .M = 8, .U = 2, .N = 32};
    c.bs_positions = {{0.0, 10.0}, {0.0, -10.0}};
    c.ris_positions = {{30.0, 5.0}, {50.0, -5.0}};
    c.p_max = {1.0, 1.0};
    c.noise_power = dbm_to_watts(-120.0);
    c.weights.assign(c.dims.K, 1.0);
    return c;
}

/// Same scenario with every surface removed.
inline ScenarioConfig without_ris(ScenarioConfig c)
{
    c.dims.R = 0;
    c.ris_positions.clear();
    return c;
}

/// Frequency-domain channels. H(b,k,p) is M x U, G(b,r,p) is N x M,
/// F(r,k,p) is N x U.
class ChannelSet
{
  public:
    ChannelSet() = default;
    explicit ChannelSet(const Dims &d)
        : dims_(d), h_(d.B * d.K * d.P), g_(d.B * d.R * d.P), f_(d.R * d.K * d.P)
    {
        for (auto &m : h_)
            m = CMatrix::Zero(d.M, d.U);
        for (auto &m : g_)
            m = CMatrix::Zero(d.N, d.M);
        for (auto &m : f_)
            m = CMatrix::Zero(d.N, d.U);
    }

    const Dims &dims() const { return dims_; }

    CMatrix &H(std::size_t b, std::size_t k, std::size_t p) { return h_[(b * dims_.K + k) * dims_.P + p]; }
    const CMatrix &H(std::size_t b, std::size_t k, std::size_t p) const { return h_[(b * dims_.K + k) * dims_.P + p]; }
    CMatrix &G(std::size_t b, std::size_t r, std::size_t p) { return g_[(b * dims_.R + r) * dims_.P + p]; }
    const CMatrix &G(std::size_t b, std::size_t r, std::size_t p) const { return g_[(b * dims_.R + r) * dims_.P + p]; }
    CMatrix &F(std::size_t r, std::size_t k, std::size_t p) { return f_[(r * dims_.K + k) * dims_.P + p]; }
    const CMatrix &F(std::size_t r, std::size_t k, std::size_t p) const { return f_[(r * dims_.K + k) * dims_.P + p]; }

    bool empty_ris() const { return g_.empty(); }

    /// (B*M) x U: direct channels H(b,k,p) stacked over b.
    CMatrix stacked_direct(std::size_t k, std::size_t p) const
    {
        CMatrix out(dims_.bm(), dims_.U);
        for (std::size_t b = 0; b < dims_.B; ++b)
            out.middleRows(b * dims_.M, dims_.M) = H(b, k, p);
        return out;
    }

    /// (R*N) x (B*M): block (r, b) is G(b,r,p).
    CMatrix stacked_bs_ris(std::size_t p) const
    {
        CMatrix out(dims_.rn(), dims_.bm());
        for (std::size_t r = 0; r < dims_.R; ++r)
            for (std::size_t b = 0; b < dims_.B; ++b)
                out.block(r * dims_.N, b * dims_.M, dims_.N, dims_.M) = G(b, r, p);
        return out;
    }

    /// (R*N) x U: F(r,k,p) stacked over r.
    CMatrix stacked_ris_user(std::size_t k, std::size_t p) const
    {
        CMatrix out(dims_.rn(), dims_.U);
        for (std::size_t r = 0; r < dims_.R; ++r)
            out.middleRows(r * dims_.N, dims_.N) = F(r, k, p);
        return out;
    }

    friend bool operator==(const ChannelSet &a, const ChannelSet &b)
    {
        return a.dims_ == b.dims_ && a.h_ == b.h_ && a.g_ == b.g_ && a.f_ == b.f_;
    }

  private:
    Dims dims_;
    std::vector<CMatrix> h_;
    std::vector<CMatrix> g_;
    std::vector<CMatrix> f_;
};

/// K points uniform on the disk around config.user_center.
inline std::vector<Point> place_users(const ScenarioConfig &config, Rng rng)
{
    std::vector<Point> users;
    users.reserve(config.dims.K);
    for (std::size_t k = 0; k < config.dims.K; ++k) {
        const double rad = config.user_radius * std::sqrt(rng.uniform());
        const double phi = rng.phase();
        users.push_back({config.user_center.x + rad * std::cos(phi), config.user_center.y + rad * std::sin(phi)});
    }
    return users;
}

inline double path_gain_db(double distance_m, double ref_loss_db, double exponent)
{
    if (!(distance_m > 0.0))
        throw std::domain_error("path_gain_db: distance must be positive");
    return ref_loss_db + 10.0 * exponent * std::log10(distance_m);
}

inline double path_gain_db(double distance_m, const LinkBudget &lb)
{
    return path_gain_db(distance_m, lb.ref_loss_db, lb.exponent);
}

/// Linear amplitude factor for an attenuation in dB.
inline double amplitude_gain(double attenuation_db) { return std::pow(10.0, -attenuation_db / 20.0); }

/// i.i.d. CN(0, gain^2) entries.
inline CMatrix sample_rayleigh(std::size_t rows, std::size_t cols, double gain, Rng rng)
{
    CMatrix out(rows, cols);
    // column-major fill order is part of the documented stream layout
    for (Eigen::Index c = 0; c < out.cols(); ++c)
        for (Eigen::Index r = 0; r < out.rows(); ++r)
            out(r, c) = gain * rng.complex_normal();
    return out;
}

/// Half-wavelength ULA response along the y axis; sin_angle is the
/// y-direction cosine of the path.
inline CVector ula_response(std::size_t size, double sin_angle)
{
    CVector a(size);
    for (std::size_t n = 0; n < size; ++n)
        a(n) = std::polar(1.0, std::numbers::pi * static_cast<double>(n) * sin_angle);
    return a;
}

/// Rank-1 line-of-sight matrix gain * a_rx * a_tx^H (rx_size x tx_size).
inline CMatrix sample_los(std::size_t tx_size, std::size_t rx_size, double gain, Point tx, Point rx)
{
    const double d = distance(tx, rx);
    if (!(d > 0.0))
        throw std::domain_error("sample_los: transmitter and receiver coincide");
    const CVector a_tx = ula_response(tx_size, (rx.y - tx.y) / d);
    const CVector a_rx = ula_response(rx_size, (tx.y - rx.y) / d);
    return gain * a_rx * a_tx.adjoint();
}

/// Draws H, G and F for one cell. H and F are independent across
/// subcarriers; G is line-of-sight and identical on every subcarrier.
inline ChannelSet generate_channels(const ScenarioConfig &config, const std::vector<Point> &users, const Rng &rng)
{
    validate(config);
    const Dims &d = config.dims;
    if (users.size() != d.K)
        throw std::invalid_argument("generate_channels: need one position per user");

    ChannelSet ch(d);
    for (std::size_t b = 0; b < d.B; ++b)
        for (std::size_t k = 0; k < d.K; ++k) {
            const double g = amplitude_gain(path_gain_db(distance(config.bs_positions[b], users[k]), config.bs_user));
            for (std::size_t p = 0; p < d.P; ++p)
                ch.H(b, k, p) = sample_rayleigh(d.M, d.U, g, rng.split(Stream::DirectChannel, {b, k, p}));
        }
    for (std::size_t r = 0; r < d.R; ++r) {
        for (std::size_t k = 0; k < d.K; ++k) {
            const double g = amplitude_gain(path_gain_db(distance(config.ris_positions[r], users[k]), config.ris_user));
            for (std::size_t p = 0; p < d.P; ++p)
                ch.F(r, k, p) = sample_rayleigh(d.N, d.U, g, rng.split(Stream::RisUserChannel, {r, k, p}));
        }
        for (std::size_t b = 0; b < d.B; ++b) {
            const Point tx = config.bs_positions[b];
            const Point rx = config.ris_positions[r];
            const CMatrix los = sample_los(d.M, d.N, amplitude_gain(path_gain_db(distance(tx, rx), config.bs_ris)), tx, rx);
            for (std::size_t p = 0; p < d.P; ++p)
                ch.G(b, r, p) = los;
        }
    }
    return ch;
}

} // namespace ris_cf

#endif
