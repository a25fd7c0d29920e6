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


#ifndef RIS_CF_FP_TRANSFORMS_HPP
#define RIS_CF_FP_TRANSFORMS_HPP

// Fractional-programming machinery: the Lagrangian dual transform that pulls
// the SINRs out of the logarithms (rho), and the two multidimensional
// quadratic transforms (xi for the active stage, varpi for the passive
// stage), plus the quadratic forms in W and theta they induce.
//
// All per-(k,p) containers below are indexed k*P + p. Per-(k,p,j) containers
// are indexed (k*P + p)*K + j.

#include "ris_cf/channel_model.hpp"
#include "ris_cf/system_metrics.hpp"
#include "ris_cf/types.hpp"

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace ris_cf {

struct AuxState
{
    std::vector<double> rho;
    std::vector<CVector> xi;
    std::vector<CVector> varpi;
};

/// Quadratic form g3(W) = -W^H A W + 2 Re{V^H W} - Y with A block diagonal
/// (I_K kron a_p on subcarrier p).
struct ActiveQuadratic
{
    std::vector<CMatrix> a; // per p, (B*M) x (B*M)
    std::vector<CVector> v; // per (p,k), index p*K + k, like Precoder
    double Y = 0.0;
    std::vector<double> mu; // per (k,p)
};

/// Quadratic form g6(theta) = -theta^H Lambda theta + 2 Re{theta^H nu} - zeta.
struct PassiveQuadratic
{
    CMatrix Lambda;
    CVector nu;
    double zeta = 0.0;
    std::vector<cplx> c;    // per (k,p,j)
    std::vector<CVector> g; // per (k,p,j)
};

inline std::size_t kp_index(std::size_t k, std::size_t p, std::size_t P) { return k * P + p; }

/// rho(k,p) = SINR(k,p), clamped at zero.
inline std::vector<double> update_rho(const EffectiveChannel &h, const Precoder &W, double noise_power)
{
    const std::size_t K = W.num_users(), P = W.num_subcarriers();
    std::vector<double> rho(K * P);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t p = 0; p < P; ++p)
            rho[kp_index(k, p, P)] = std::max(0.0, sinr(h, W, k, p, noise_power));
    return rho;
}

/// mu(k,p) = eta_k (1 + rho(k,p)).
inline std::vector<double> compute_mu(std::span<const double> rho, std::span<const double> weights, std::size_t P)
{
    std::vector<double> mu(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i)
        mu[i] = weights[i / P] * (1.0 + rho[i]);
    return mu;
}

/// q_k^H (sum_j q_j q_j^H + sigma^2 I)^{-1} q_k, in [0, 1).
inline double f_kp(const EffectiveChannel &h, const Precoder &W, std::size_t k, std::size_t p, double noise_power)
{
    const CMatrix q = received_vectors(h, W, k, p);
    return hermitian_form_inverse(received_covariance(q, noise_power), q.col(static_cast<Eigen::Index>(k)));
}

/// Lagrangian-dual surrogate f(Theta, W, rho), reported in bits.
///
/// The transform is exact with natural logarithms: sum eta [ln(1+rho) - rho +
/// (1+rho) f_kp] is maximized at rho = SINR with maximum sum eta ln(1+SINR).
/// Dividing by ln 2 keeps both properties and puts the value on the same
/// scale as the weighted sum-rate.
inline double surrogate_f(const EffectiveChannel &h, const Precoder &W, std::span<const double> rho, double noise_power,
                          std::span<const double> weights)
{
    const std::size_t K = W.num_users(), P = W.num_subcarriers();
    double nats = 0.0;
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t p = 0; p < P; ++p) {
            const double r = rho[kp_index(k, p, P)];
            nats += weights[k] * (std::log1p(r) - r + (1.0 + r) * f_kp(h, W, k, p, noise_power));
        }
    return nats / std::numbers::ln2;
}

/// g1(W) = sum mu(k,p) f_kp(W).
inline double g1(const EffectiveChannel &h, const Precoder &W, std::span<const double> mu, double noise_power)
{
    const std::size_t K = W.num_users(), P = W.num_subcarriers();
    double total = 0.0;
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t p = 0; p < P; ++p)
            total += mu[kp_index(k, p, P)] * f_kp(h, W, k, p, noise_power);
    return total;
}

/// xi(k,p) = sqrt(mu) (sum_j q_j q_j^H + sigma^2 I)^{-1} q_k.
inline std::vector<CVector> update_xi(const EffectiveChannel &h, const Precoder &W, std::span<const double> mu,
                                      double noise_power)
{
    const std::size_t K = W.num_users(), P = W.num_subcarriers();
    std::vector<CVector> xi(K * P);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t p = 0; p < P; ++p) {
            const CMatrix q = received_vectors(h, W, k, p);
            const Eigen::LLT<CMatrix> llt(received_covariance(q, noise_power));
            const std::size_t i = kp_index(k, p, P);
            xi[i] = std::sqrt(mu[i]) * llt.solve(q.col(static_cast<Eigen::Index>(k)));
        }
    return xi;
}

namespace detail {

/// 2 sqrt(mu) Re{x^H q_k} - x^H (sum_j q_j q_j^H + sigma^2 I) x.
inline double quadratic_transform_term(const CMatrix &q, std::size_t k, const CVector &x, double mu, double noise_power)
{
    double val = 2.0 * std::sqrt(mu) * x.dot(q.col(static_cast<Eigen::Index>(k))).real();
    val -= noise_power * x.squaredNorm();
    for (Eigen::Index j = 0; j < q.cols(); ++j)
        val -= std::norm(x.dot(q.col(j)));
    return val;
}

} // namespace detail

/// g2(W, xi): the quadratic-transform surrogate of g1.
inline double g2(const EffectiveChannel &h, const Precoder &W, std::span<const CVector> xi, std::span<const double> mu,
                 double noise_power)
{
    const std::size_t K = W.num_users(), P = W.num_subcarriers();
    double total = 0.0;
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t p = 0; p < P; ++p) {
            const std::size_t i = kp_index(k, p, P);
            total += detail::quadratic_transform_term(received_vectors(h, W, k, p), k, xi[i], mu[i], noise_power);
        }
    return total;
}

/// Collects g2 into -W^H A W + 2 Re{V^H W} - Y. The linear block for (p,k)
/// is sqrt(mu) h(k,p) xi(k,p), which is what makes g3 and g2 agree as
/// functions of W.
inline ActiveQuadratic build_active_quadratic(const EffectiveChannel &h, std::span<const CVector> xi,
                                              std::span<const double> mu, double noise_power)
{
    const std::size_t K = h.num_users(), P = h.num_subcarriers();
    const auto bm = h.h(0, 0).rows();
    ActiveQuadratic quad;
    quad.a.assign(P, CMatrix::Zero(bm, bm));
    quad.v.resize(P * K);
    quad.mu.assign(mu.begin(), mu.end());
    for (std::size_t p = 0; p < P; ++p)
        for (std::size_t k = 0; k < K; ++k) {
            const std::size_t i = kp_index(k, p, P);
            const CVector hx = h.h(k, p) * xi[i];
            quad.a[p].noalias() += hx * hx.adjoint();
            quad.v[p * K + k] = std::sqrt(mu[i]) * hx;
            quad.Y += noise_power * xi[i].squaredNorm();
        }
    return quad;
}

inline double g3(const ActiveQuadratic &quad, const Precoder &W)
{
    const std::size_t K = W.num_users(), P = W.num_subcarriers();
    double val = -quad.Y;
    for (std::size_t p = 0; p < P; ++p)
        for (std::size_t k = 0; k < K; ++k) {
            const CVector &w = W.w(p, k);
            val -= w.dot(quad.a[p] * w).real();
            val += 2.0 * quad.v[p * K + k].dot(w).real();
        }
    return val;
}

/// U x K matrix with columns Q(k,p,j)(Theta) = sum_b (H_b^H + F^H Theta^H G_b) w_b(p,j),
/// evaluated from the raw channel tensors.
inline CMatrix q_matrix(const ChannelSet &ch, const PhaseConfig &phases, const Precoder &W, std::size_t k, std::size_t p)
{
    const Dims &d = ch.dims();
    CMatrix q = CMatrix::Zero(d.U, d.K);
    for (std::size_t j = 0; j < d.K; ++j) {
        for (std::size_t b = 0; b < d.B; ++b)
            q.col(j).noalias() += ch.H(b, k, p).adjoint() * W.block(p, j, b);
        if (d.R > 0) {
            // Theta^H G w, stacked over surfaces
            CVector reflected = CVector::Zero(d.rn());
            for (std::size_t r = 0; r < d.R; ++r)
                for (std::size_t b = 0; b < d.B; ++b)
                    reflected.segment(r * d.N, d.N).noalias() += ch.G(b, r, p) * W.block(p, j, b);
            reflected = phases.theta.conjugate().cwiseProduct(reflected);
            q.col(j).noalias() += ch.stacked_ris_user(k, p).adjoint() * reflected;
        }
    }
    return q;
}

inline CVector q_func(const ChannelSet &ch, const PhaseConfig &phases, const Precoder &W, std::size_t k, std::size_t p,
                      std::size_t j)
{
    return q_matrix(ch, phases, W, k, p).col(static_cast<Eigen::Index>(j));
}

/// g4(Theta) = sum mu(k,p) f_kp, written through Q.
inline double g4(const ChannelSet &ch, const PhaseConfig &phases, const Precoder &W, std::span<const double> mu,
                 double noise_power)
{
    const Dims &d = ch.dims();
    double total = 0.0;
    for (std::size_t k = 0; k < d.K; ++k)
        for (std::size_t p = 0; p < d.P; ++p) {
            const CMatrix q = q_matrix(ch, phases, W, k, p);
            total += mu[kp_index(k, p, d.P)] *
                     hermitian_form_inverse(received_covariance(q, noise_power), q.col(static_cast<Eigen::Index>(k)));
        }
    return total;
}

/// varpi(k,p) = sqrt(mu) (sum_j Q_j Q_j^H + sigma^2 I)^{-1} Q_k.
inline std::vector<CVector> update_varpi(const ChannelSet &ch, const PhaseConfig &phases, const Precoder &W,
                                         std::span<const double> mu, double noise_power)
{
    const Dims &d = ch.dims();
    std::vector<CVector> varpi(d.K * d.P);
    for (std::size_t k = 0; k < d.K; ++k)
        for (std::size_t p = 0; p < d.P; ++p) {
            const CMatrix q = q_matrix(ch, phases, W, k, p);
            const Eigen::LLT<CMatrix> llt(received_covariance(q, noise_power));
            const std::size_t i = kp_index(k, p, d.P);
            varpi[i] = std::sqrt(mu[i]) * llt.solve(q.col(static_cast<Eigen::Index>(k)));
        }
    return varpi;
}

/// g5(Theta, varpi): the quadratic-transform surrogate of g4.
inline double g5(const ChannelSet &ch, const PhaseConfig &phases, const Precoder &W, std::span<const CVector> varpi,
                 std::span<const double> mu, double noise_power)
{
    const Dims &d = ch.dims();
    double total = 0.0;
    for (std::size_t k = 0; k < d.K; ++k)
        for (std::size_t p = 0; p < d.P; ++p) {
            const std::size_t i = kp_index(k, p, d.P);
            total += detail::quadratic_transform_term(q_matrix(ch, phases, W, k, p), k, varpi[i], mu[i], noise_power);
        }
    return total;
}

/// With varpi fixed, varpi^H Q(k,p,j) = c(k,p,j) + theta^H g(k,p,j) where
/// c collects the direct paths and g = conj(F varpi) .* (G_p w(p,j)).
inline PassiveQuadratic build_passive_quadratic(const ChannelSet &ch, const Precoder &W, std::span<const CVector> varpi,
                                                std::span<const double> mu, double noise_power)
{
    const Dims &d = ch.dims();
    const auto rn = static_cast<Eigen::Index>(d.rn());
    PassiveQuadratic quad;
    quad.Lambda = CMatrix::Zero(rn, rn);
    quad.nu = CVector::Zero(rn);
    quad.c.resize(d.K * d.P * d.K);
    quad.g.resize(d.K * d.P * d.K);

    for (std::size_t p = 0; p < d.P; ++p) {
        const CMatrix g_p = d.R > 0 ? ch.stacked_bs_ris(p) : CMatrix(0, d.bm());
        for (std::size_t k = 0; k < d.K; ++k) {
            const std::size_t i = kp_index(k, p, d.P);
            const CVector &x = varpi[i];
            const CVector fx_conj = d.R > 0 ? CVector((ch.stacked_ris_user(k, p) * x).conjugate()) : CVector(0);
            const CMatrix h_direct = ch.stacked_direct(k, p);
            const double smu = std::sqrt(mu[i]);
            for (std::size_t j = 0; j < d.K; ++j) {
                const std::size_t t = i * d.K + j;
                const CVector &w = W.w(p, j);
                quad.c[t] = x.dot(h_direct.adjoint() * w);
                quad.g[t] = fx_conj.cwiseProduct(g_p * w);
                quad.Lambda.noalias() += quad.g[t] * quad.g[t].adjoint();
                quad.nu -= std::conj(quad.c[t]) * quad.g[t];
                quad.zeta += std::norm(quad.c[t]);
            }
            quad.nu += smu * quad.g[i * d.K + k];
            quad.zeta += noise_power * x.squaredNorm() - 2.0 * smu * quad.c[i * d.K + k].real();
        }
    }
    return quad;
}

inline double g6(const PassiveQuadratic &quad, const CVector &theta)
{
    return -theta.dot(quad.Lambda * theta).real() + 2.0 * theta.dot(quad.nu).real() - quad.zeta;
}

} // namespace ris_cf

#endif
