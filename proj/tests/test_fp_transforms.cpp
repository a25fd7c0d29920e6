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

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace ris_cf;

namespace {

struct Point3
{
    Instance in;
    PhaseConfig ph;
    Precoder W;
};

Point3 random_point(std::uint64_t seed, Dims d = Dims{.B = 2, .R = 2, .K = 3, .P = 2, .M = 2, .U = 2, .N = 2})
{
    Point3 pt{random_instance(d, Rng(seed)), {}, {}};
    Rng rng(seed + 1000);
    pt.ph = random_phases(d, rng);
    pt.W = random_precoder(pt.in.config, rng);
    return pt;
}

double rel(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

ChannelSet scalar_channel(cplx h)
{
    ChannelSet ch(Dims{});
    ch.H(0, 0, 0)(0, 0) = h;
    return ch;
}

Precoder scalar_precoder(cplx w)
{
    Precoder W(Dims{});
    W.w(0, 0)(0) = w;
    return W;
}

PhaseConfig no_phases()
{
    PhaseConfig ph;
    ph.theta.resize(0);
    return ph;
}

} // namespace

TEST(UpdateRho, EqualsSinr)
{
    // K=1, U=1: gamma = |h w|^2 / sigma^2 = 3
    const EffectiveChannel h = effective_channel(scalar_channel(std::sqrt(3.0)), no_phases());
    const auto rho = update_rho(h, scalar_precoder(1.0), 1.0);
    ASSERT_EQ(rho.size(), 1u);
    EXPECT_NEAR(rho[0], 3.0, 1e-14);
}

TEST(UpdateRho, ZeroPrecoder)
{
    const Point3 pt = random_point(1);
    for (double r : update_rho(effective_channel(pt.in.channels, pt.ph), Precoder(pt.in.config.dims), 0.1))
        EXPECT_EQ(r, 0.0);
}

TEST(FKp, ScalarHalf)
{
    const EffectiveChannel h = effective_channel(scalar_channel(1.0), no_phases());
    EXPECT_NEAR(f_kp(h, scalar_precoder(1.0), 0, 0, 1.0), 0.5, 1e-15);
}

TEST(FKp, ZeroOwnPrecoder)
{
    Point3 pt = random_point(2);
    pt.W.w(1, 2).setZero();
    EXPECT_NEAR(f_kp(effective_channel(pt.in.channels, pt.ph), pt.W, 2, 1, 0.1), 0.0, 1e-15);
}

TEST(FKp, SingleUserEqualsSinrOverOnePlusSinr)
{
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Point3 pt = random_point(s, Dims{.B = 2, .R = 1, .K = 1, .P = 2, .M = 2, .U = 2, .N = 3});
        const EffectiveChannel h = effective_channel(pt.in.channels, pt.ph);
        for (std::size_t p = 0; p < 2; ++p) {
            const double g = sinr(h, pt.W, 0, p, 0.1);
            EXPECT_NEAR(f_kp(h, pt.W, 0, p, 0.1), g / (1.0 + g), 1e-12);
        }
    }
}

TEST(Surrogate, EqualsWsrAtOptimalRho)
{
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Point3 pt = random_point(s);
        const EffectiveChannel h = effective_channel(pt.in.channels, pt.ph);
        const auto &eta = pt.in.config.weights;
        const auto rho = update_rho(h, pt.W, 0.1);
        const double expect = oracle::wsr(pt.in.channels, pt.ph.theta, pt.W, 0.1, eta);
        EXPECT_LT(rel(surrogate_f(h, pt.W, rho, 0.1, eta), expect), 1e-9);
    }
}

TEST(Surrogate, OptimalRhoIsMaximizer)
{
    Rng rng(77);
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Point3 pt = random_point(s);
        const EffectiveChannel h = effective_channel(pt.in.channels, pt.ph);
        const auto &eta = pt.in.config.weights;
        const auto rho = update_rho(h, pt.W, 0.1);
        const double best = surrogate_f(h, pt.W, rho, 0.1, eta);
        for (int t = 0; t < 20; ++t) {
            auto r = rho;
            for (auto &x : r)
                x = std::max(0.0, x * (1.0 + 0.5 * (rng.uniform() - 0.5)) + 0.01 * (rng.uniform() - 0.5));
            EXPECT_LE(surrogate_f(h, pt.W, r, 0.1, eta), best + 1e-12);
        }
    }
}

TEST(UpdateXi, ScalarHalf)
{
    const EffectiveChannel h = effective_channel(scalar_channel(1.0), no_phases());
    const std::vector<double> mu{1.0};
    const auto xi = update_xi(h, scalar_precoder(1.0), mu, 1.0);
    EXPECT_NEAR(std::abs(xi[0](0) - cplx(0.5, 0.0)), 0.0, 1e-15);
}

TEST(UpdateXi, ZeroPrecoder)
{
    const Point3 pt = random_point(3);
    const std::vector<double> mu(6, 2.0);
    for (const auto &x : update_xi(effective_channel(pt.in.channels, pt.ph), Precoder(pt.in.config.dims), mu, 0.1))
        EXPECT_EQ(x.norm(), 0.0);
}

TEST(UpdateXi, G2AtOptimumEqualsG1)
{
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Point3 pt = random_point(s);
        const EffectiveChannel h = effective_channel(pt.in.channels, pt.ph);
        const auto mu = compute_mu(update_rho(h, pt.W, 0.1), pt.in.config.weights, 2);
        const auto xi = update_xi(h, pt.W, mu, 0.1);
        // g1 from the definition: sum mu * q^H C^{-1} q with C built explicitly
        double g1_ref = 0.0;
        for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t p = 0; p < 2; ++p) {
                const CMatrix c = oracle::interference_plus_noise(pt.in.channels, pt.ph.theta, pt.W, k, p, 0.1, true);
                const CVector q = oracle::downlink(pt.in.channels, pt.ph.theta, k, p) * pt.W.w(p, k);
                g1_ref += mu[k * 2 + p] * (q.adjoint() * oracle::inverse(c) * q)(0, 0).real();
            }
        EXPECT_LT(rel(g1(h, pt.W, mu, 0.1), g1_ref), 1e-10);
        EXPECT_LT(rel(g2(h, pt.W, xi, mu, 0.1), g1_ref), 1e-9);
    }
}

TEST(UpdateXi, OptimumIsMaximizer)
{
    Rng rng(31);
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Point3 pt = random_point(s);
        const EffectiveChannel h = effective_channel(pt.in.channels, pt.ph);
        const auto mu = compute_mu(update_rho(h, pt.W, 0.1), pt.in.config.weights, 2);
        const auto xi = update_xi(h, pt.W, mu, 0.1);
        const double best = g2(h, pt.W, xi, mu, 0.1);
        for (int t = 0; t < 20; ++t) {
            auto x = xi;
            for (auto &v : x)
                for (Eigen::Index i = 0; i < v.size(); ++i)
                    v(i) += 0.05 * rng.complex_normal() * std::max(1.0, std::abs(v(i)));
            EXPECT_LE(g2(h, pt.W, x, mu, 0.1), best + 1e-9 * std::abs(best));
        }
    }
}

TEST(ActiveQuadratic, ZeroXi)
{
    const Point3 pt = random_point(4);
    const EffectiveChannel h = effective_channel(pt.in.channels, pt.ph);
    const std::vector<CVector> xi(6, CVector::Zero(2));
    const std::vector<double> mu(6, 1.5);
    const ActiveQuadratic quad = build_active_quadratic(h, xi, mu, 0.1);
    for (const auto &a : quad.a)
        EXPECT_EQ(a.norm(), 0.0);
    for (const auto &v : quad.v)
        EXPECT_EQ(v.norm(), 0.0);
    EXPECT_EQ(quad.Y, 0.0);
    EXPECT_EQ(g3(quad, pt.W), 0.0);
}

TEST(ActiveQuadratic, AgreesWithG2Pointwise)
{
    Rng rng(5);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Point3 pt = random_point(s);
        const EffectiveChannel h = effective_channel(pt.in.channels, pt.ph);
        const auto mu = compute_mu(update_rho(h, pt.W, 0.1), pt.in.config.weights, 2);
        const auto xi = update_xi(h, pt.W, mu, 0.1);
        const ActiveQuadratic quad = build_active_quadratic(h, xi, mu, 0.1);
        for (int t = 0; t < 5; ++t) {
            Precoder W = random_precoder(pt.in.config, rng);
            for (auto &w : W.vectors())
                w *= 3.0 * rng.uniform();
            const double ref = oracle::quadratic_transform(pt.in.channels, pt.ph.theta, W, xi, mu, 0.1);
            EXPECT_LT(rel(g3(quad, W), ref), 1e-10);
        }
    }
}

TEST(ActiveQuadratic, BlocksArePositiveSemidefinite)
{
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Point3 pt = random_point(s);
        const EffectiveChannel h = effective_channel(pt.in.channels, pt.ph);
        const auto mu = compute_mu(update_rho(h, pt.W, 0.1), pt.in.config.weights, 2);
        const ActiveQuadratic quad = build_active_quadratic(h, update_xi(h, pt.W, mu, 0.1), mu, 0.1);
        for (const auto &a : quad.a) {
            EXPECT_LT((a - a.adjoint()).norm(), 1e-14 * std::max(1.0, a.norm()));
            const Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
            EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12 * std::max(1.0, a.norm()));
        }
    }
}

TEST(QFunc, ZeroPhasesUseDirectPathOnly)
{
    Point3 pt = random_point(6);
    pt.ph.theta.setZero();
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t j = 0; j < 3; ++j) {
            CVector expect = CVector::Zero(2);
            for (std::size_t b = 0; b < 2; ++b)
                expect += pt.in.channels.H(b, k, 1).adjoint() * pt.W.block(1, j, b);
            EXPECT_LT((q_func(pt.in.channels, pt.ph, pt.W, k, 1, j) - expect).norm(), 1e-14);
        }
}

TEST(QFunc, MatchesEffectiveChannel)
{
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Point3 pt = random_point(s);
        const EffectiveChannel h = effective_channel(pt.in.channels, pt.ph);
        for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t p = 0; p < 2; ++p)
                for (std::size_t j = 0; j < 3; ++j)
                    EXPECT_LT((q_func(pt.in.channels, pt.ph, pt.W, k, p, j) - h.h(k, p).adjoint() * pt.W.w(p, j)).norm(),
                              1e-12);
    }
}

TEST(QFunc, ZeroPrecoder)
{
    const Point3 pt = random_point(7);
    EXPECT_EQ(q_func(pt.in.channels, pt.ph, Precoder(pt.in.config.dims), 0, 0, 1).norm(), 0.0);
}

TEST(UpdateVarpi, ScalarHalf)
{
    const ChannelSet ch = scalar_channel(1.0);
    const std::vector<double> mu{1.0};
    const auto varpi = update_varpi(ch, no_phases(), scalar_precoder(1.0), mu, 1.0);
    EXPECT_NEAR(std::abs(varpi[0](0) - cplx(0.5, 0.0)), 0.0, 1e-15);
}

TEST(UpdateVarpi, ZeroPrecoder)
{
    const Point3 pt = random_point(8);
    const std::vector<double> mu(6, 2.0);
    for (const auto &x : update_varpi(pt.in.channels, pt.ph, Precoder(pt.in.config.dims), mu, 0.1))
        EXPECT_EQ(x.norm(), 0.0);
}

TEST(UpdateVarpi, G5AtOptimumEqualsG4)
{
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Point3 pt = random_point(s);
        const EffectiveChannel h = effective_channel(pt.in.channels, pt.ph);
        const auto mu = compute_mu(update_rho(h, pt.W, 0.1), pt.in.config.weights, 2);
        const auto varpi = update_varpi(pt.in.channels, pt.ph, pt.W, mu, 0.1);
        const double g4_val = g4(pt.in.channels, pt.ph, pt.W, mu, 0.1);
        EXPECT_LT(rel(g4_val, g1(h, pt.W, mu, 0.1)), 1e-10);
        EXPECT_LT(rel(g5(pt.in.channels, pt.ph, pt.W, varpi, mu, 0.1), g4_val), 1e-9);
    }
}

TEST(UpdateVarpi, OptimumIsMaximizer)
{
    Rng rng(41);
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Point3 pt = random_point(s);
        const auto mu = compute_mu(update_rho(effective_channel(pt.in.channels, pt.ph), pt.W, 0.1), pt.in.config.weights, 2);
        const auto varpi = update_varpi(pt.in.channels, pt.ph, pt.W, mu, 0.1);
        const double best = g5(pt.in.channels, pt.ph, pt.W, varpi, mu, 0.1);
        for (int t = 0; t < 20; ++t) {
            auto x = varpi;
            for (auto &v : x)
                for (Eigen::Index i = 0; i < v.size(); ++i)
                    v(i) += 0.05 * rng.complex_normal() * std::max(1.0, std::abs(v(i)));
            EXPECT_LE(g5(pt.in.channels, pt.ph, pt.W, x, mu, 0.1), best + 1e-9 * std::abs(best));
        }
    }
}

TEST(PassiveQuadratic, ZeroVarpi)
{
    const Point3 pt = random_point(9);
    const std::vector<CVector> varpi(6, CVector::Zero(2));
    const std::vector<double> mu(6, 1.0);
    const PassiveQuadratic quad = build_passive_quadratic(pt.in.channels, pt.W, varpi, mu, 0.1);
    EXPECT_EQ(quad.Lambda.norm(), 0.0);
    EXPECT_EQ(quad.nu.norm(), 0.0);
    EXPECT_EQ(quad.zeta, 0.0);
}

TEST(PassiveQuadratic, AgreesWithG5Pointwise)
{
    Rng rng(10);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Point3 pt = random_point(s);
        const auto mu = compute_mu(update_rho(effective_channel(pt.in.channels, pt.ph), pt.W, 0.1), pt.in.config.weights, 2);
        const auto varpi = update_varpi(pt.in.channels, pt.ph, pt.W, mu, 0.1);
        const PassiveQuadratic quad = build_passive_quadratic(pt.in.channels, pt.W, varpi, mu, 0.1);
        for (int t = 0; t < 5; ++t) {
            CVector theta(4);
            for (Eigen::Index n = 0; n < 4; ++n)
                theta(n) = 2.0 * rng.complex_normal();
            const double ref = oracle::quadratic_transform(pt.in.channels, theta, pt.W, varpi, mu, 0.1);
            EXPECT_LT(rel(g6(quad, theta), ref), 1e-10);
        }
    }
}

TEST(PassiveQuadratic, LambdaIsPositiveSemidefinite)
{
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Point3 pt = random_point(s);
        const auto mu = compute_mu(update_rho(effective_channel(pt.in.channels, pt.ph), pt.W, 0.1), pt.in.config.weights, 2);
        const PassiveQuadratic quad = build_passive_quadratic(
            pt.in.channels, pt.W, update_varpi(pt.in.channels, pt.ph, pt.W, mu, 0.1), mu, 0.1);
        const CMatrix &L = quad.Lambda;
        EXPECT_LT((L - L.adjoint()).norm(), 1e-14 * std::max(1.0, L.norm()));
        const Eigen::SelfAdjointEigenSolver<CMatrix> es(L);
        EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12 * std::max(1.0, L.norm()));
    }
}

TEST(ComputeMu, WeightTimesOnePlusRho)
{
    const std::vector<double> rho{0.0, 1.0, 2.0, 3.0, 4.0, 5.0};
    const std::vector<double> eta{2.0, 0.5};
    const auto mu = compute_mu(rho, eta, 3);
    const std::vector<double> expect{2.0, 4.0, 6.0, 2.0, 2.5, 3.0};
    for (std::size_t i = 0; i < 6; ++i)
        EXPECT_DOUBLE_EQ(mu[i], expect[i]);
}
