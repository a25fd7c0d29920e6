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


#ifndef RIS_CF_SYSTEM_METRICS_HPP
#define RIS_CF_SYSTEM_METRICS_HPP

#include "ris_cf/channel_model.hpp"
#include "ris_cf/types.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace ris_cf {

enum class PhaseMode
{
    Relaxed,     // |theta_n| <= 1
    UnitModulus, // |theta_n| == 1
};

/// Stacked reflection coefficients of all surfaces, length R*N.
struct PhaseConfig
{
    CVector theta;
    PhaseMode mode = PhaseMode::Relaxed;

    bool feasible(double tol = 1e-12) const
    {
        for (Eigen::Index n = 0; n < theta.size(); ++n) {
            const double m = std::abs(theta(n));
            if (mode == PhaseMode::Relaxed ? m > 1.0 + tol : std::abs(m - 1.0) > tol)
                return false;
        }
        return true;
    }
};

/// Active precoder. w(p,k) is the length B*M stacked vector for user k on
/// subcarrier p; the stacked W orders entries p-major then k.
class Precoder
{
  public:
    Precoder() = default;
    Precoder(const Dims &d) : B_(d.B), M_(d.M), K_(d.K), P_(d.P), w_(d.K * d.P, CVector::Zero(d.bm())) {}

    std::size_t num_bs() const { return B_; }
    std::size_t bs_antennas() const { return M_; }
    std::size_t num_users() const { return K_; }
    std::size_t num_subcarriers() const { return P_; }

    CVector &w(std::size_t p, std::size_t k) { return w_[p * K_ + k]; }
    const CVector &w(std::size_t p, std::size_t k) const { return w_[p * K_ + k]; }

    auto block(std::size_t p, std::size_t k, std::size_t b) { return w(p, k).segment(b * M_, M_); }
    auto block(std::size_t p, std::size_t k, std::size_t b) const { return w(p, k).segment(b * M_, M_); }

    std::span<CVector> vectors() { return w_; }
    std::span<const CVector> vectors() const { return w_; }

    /// Stacked W of length P*K*B*M.
    CVector stacked() const
    {
        CVector out(static_cast<Eigen::Index>(P_ * K_ * B_ * M_));
        for (std::size_t i = 0; i < w_.size(); ++i)
            out.segment(i * B_ * M_, B_ * M_) = w_[i];
        return out;
    }

    bool all_finite() const
    {
        return std::all_of(w_.begin(), w_.end(), [](const CVector &v) { return v.allFinite(); });
    }

  private:
    std::size_t B_ = 0, M_ = 0, K_ = 0, P_ = 0;
    std::vector<CVector> w_;
};

/// h(k,p) is (B*M) x U; its conjugate transpose is the U x (B*M) channel
/// seen by user k on subcarrier p through the direct and reflected paths.
class EffectiveChannel
{
  public:
    EffectiveChannel() = default;
    EffectiveChannel(std::size_t K, std::size_t P) : K_(K), P_(P), h_(K * P) {}

    CMatrix &h(std::size_t k, std::size_t p) { return h_[k * P_ + p]; }
    const CMatrix &h(std::size_t k, std::size_t p) const { return h_[k * P_ + p]; }
    std::size_t num_users() const { return K_; }
    std::size_t num_subcarriers() const { return P_; }

  private:
    std::size_t K_ = 0, P_ = 0;
    std::vector<CMatrix> h_;
};

/// h(k,p) = [H(1,k,p); ...; H(B,k,p)] + G_p^H diag(theta) F_{k,p}.
inline EffectiveChannel effective_channel(const ChannelSet &ch, const PhaseConfig &phases)
{
    const Dims &d = ch.dims();
    if (static_cast<std::size_t>(phases.theta.size()) != d.rn())
        throw std::invalid_argument("effective_channel: theta length must be R*N");
    EffectiveChannel out(d.K, d.P);
    for (std::size_t p = 0; p < d.P; ++p) {
        CMatrix g_adj_theta;
        if (d.R > 0)
            g_adj_theta = ch.stacked_bs_ris(p).adjoint() * phases.theta.asDiagonal();
        for (std::size_t k = 0; k < d.K; ++k) {
            out.h(k, p) = ch.stacked_direct(k, p);
            if (d.R > 0)
                out.h(k, p).noalias() += g_adj_theta * ch.stacked_ris_user(k, p);
        }
    }
    return out;
}

/// U x K matrix whose column j is h(k,p)^H w(p,j).
inline CMatrix received_vectors(const EffectiveChannel &h, const Precoder &W, std::size_t k, std::size_t p)
{
    const std::size_t K = W.num_users();
    const CMatrix hk_adj = h.h(k, p).adjoint();
    CMatrix q(hk_adj.rows(), static_cast<Eigen::Index>(K));
    for (std::size_t j = 0; j < K; ++j)
        q.col(j) = hk_adj * W.w(p, j);
    return q;
}

/// sigma^2 I + sum over columns of q q^H, optionally skipping one column.
inline CMatrix received_covariance(const CMatrix &q, double noise_power, Eigen::Index skip = -1)
{
    CMatrix c = noise_power * CMatrix::Identity(q.rows(), q.rows());
    for (Eigen::Index j = 0; j < q.cols(); ++j)
        if (j != skip)
            c.noalias() += q.col(j) * q.col(j).adjoint();
    return c;
}

/// q^H C^{-1} q for Hermitian positive definite C.
inline double hermitian_form_inverse(const CMatrix &c, const CVector &q)
{
    const Eigen::LLT<CMatrix> llt(c);
    return std::max(0.0, q.dot(llt.solve(q)).real());
}

/// MMSE-receiver SINR of user k on subcarrier p.
inline double sinr(const EffectiveChannel &h, const Precoder &W, std::size_t k, std::size_t p, double noise_power)
{
    if (!(noise_power > 0.0))
        throw std::invalid_argument("sinr: noise power must be positive");
    const CMatrix q = received_vectors(h, W, k, p);
    const auto kk = static_cast<Eigen::Index>(k);
    return hermitian_form_inverse(received_covariance(q, noise_power, kk), q.col(kk));
}

inline double wsr(const EffectiveChannel &h, const Precoder &W, double noise_power, std::span<const double> weights)
{
    double total = 0.0;
    for (std::size_t k = 0; k < W.num_users(); ++k)
        for (std::size_t p = 0; p < W.num_subcarriers(); ++p)
            total += weights[k] * std::log2(1.0 + sinr(h, W, k, p, noise_power));
    return total;
}

/// Entry b is the sum over (p,k) of the squared norm of the BS-b block.
inline RVector per_bs_power(const Precoder &W)
{
    RVector out = RVector::Zero(static_cast<Eigen::Index>(W.num_bs()));
    for (std::size_t p = 0; p < W.num_subcarriers(); ++p)
        for (std::size_t k = 0; k < W.num_users(); ++k)
            for (std::size_t b = 0; b < W.num_bs(); ++b)
                out(b) += W.block(p, k, b).squaredNorm();
    return out;
}

} // namespace ris_cf

#endif
