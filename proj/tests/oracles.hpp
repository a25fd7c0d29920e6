// Independent reference implementations used by the tests. Nothing here calls
// into the library beyond its plain data types.
#ifndef RIS_CF_TESTS_ORACLES_HPP
#define RIS_CF_TESTS_ORACLES_HPP

#include "ris_cf/ris_cf.hpp"

#include <Eigen/LU>

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using namespace ris_cf;

inline CMatrix inverse(const CMatrix &m) { return m.fullPivLu().inverse(); }

// 2x2 inverse by cofactors
inline CMatrix inverse2(const CMatrix &m)
{
    const cplx det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    CMatrix out(2, 2);
    out << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return out / det;
}

// U x (B*M) downlink channel of user k on subcarrier p, with Theta_r built
// as an explicit diagonal matrix per surface.
inline CMatrix downlink(const ChannelSet &ch, const CVector &theta, std::size_t k, std::size_t p)
{
    const Dims &d = ch.dims();
    CMatrix out(d.U, d.bm());
    for (std::size_t b = 0; b < d.B; ++b) {
        CMatrix blk = ch.H(b, k, p).adjoint();
        for (std::size_t r = 0; r < d.R; ++r) {
            CMatrix Th = CMatrix::Zero(d.N, d.N);
            for (std::size_t n = 0; n < d.N; ++n)
                Th(n, n) = theta(r * d.N + n);
            blk += ch.F(r, k, p).adjoint() * Th.adjoint() * ch.G(b, r, p);
        }
        out.middleCols(b * d.M, d.M) = blk;
    }
    return out;
}

inline CMatrix interference_plus_noise(const ChannelSet &ch, const CVector &theta, const Precoder &W, std::size_t k,
                                       std::size_t p, double s2, bool include_self)
{
    const CMatrix hk = downlink(ch, theta, k, p);
    CMatrix c = s2 * CMatrix::Identity(ch.dims().U, ch.dims().U);
    for (std::size_t j = 0; j < W.num_users(); ++j)
        if (include_self || j != k) {
            const CVector q = hk * W.w(p, j);
            c += q * q.adjoint();
        }
    return c;
}

inline double sinr(const ChannelSet &ch, const CVector &theta, const Precoder &W, std::size_t k, std::size_t p,
                   double s2)
{
    const CMatrix c = interference_plus_noise(ch, theta, W, k, p, s2, false);
    const CVector q = downlink(ch, theta, k, p) * W.w(p, k);
    const CMatrix ci = c.rows() == 2 ? inverse2(c) : inverse(c);
    return (q.adjoint() * ci * q)(0, 0).real();
}

inline double wsr(const ChannelSet &ch, const CVector &theta, const Precoder &W, double s2,
                  const std::vector<double> &eta)
{
    double total = 0.0;
    for (std::size_t k = 0; k < W.num_users(); ++k)
        for (std::size_t p = 0; p < W.num_subcarriers(); ++p)
            total += eta[k] * std::log2(1.0 + sinr(ch, theta, W, k, p, s2));
    return total;
}

// W^H D_b W with D_b the dense selection matrix of BS b over the stacked W
inline double bs_power(const Precoder &W, std::size_t b)
{
    const CVector s = W.stacked();
    const auto n = s.size();
    const auto bm = static_cast<Eigen::Index>(W.num_bs() * W.bs_antennas());
    const auto M = static_cast<Eigen::Index>(W.bs_antennas());
    CMatrix D = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        if ((i % bm) / M == static_cast<Eigen::Index>(b))
            D(i, i) = 1.0;
    return (s.adjoint() * D * s)(0, 0).real();
}

// sum mu * [2 sqrt(mu) Re{x^H q_k} - x^H C x] with every matrix formed explicitly
inline double quadratic_transform(const ChannelSet &ch, const CVector &theta, const Precoder &W,
                                  const std::vector<CVector> &x, const std::vector<double> &mu, double s2)
{
    const Dims &d = ch.dims();
    double total = 0.0;
    for (std::size_t k = 0; k < d.K; ++k)
        for (std::size_t p = 0; p < d.P; ++p) {
            const std::size_t i = k * d.P + p;
            const CMatrix c = interference_plus_noise(ch, theta, W, k, p, s2, true);
            const CVector q = downlink(ch, theta, k, p) * W.w(p, k);
            total += 2.0 * std::sqrt(mu[i]) * (x[i].adjoint() * q)(0, 0).real() - (x[i].adjoint() * c * x[i])(0, 0).real();
        }
    return total;
}

inline double active_objective(const ActiveQuadratic &quad, const Precoder &W)
{
    const std::size_t K = W.num_users();
    double val = -quad.Y;
    for (std::size_t p = 0; p < W.num_subcarriers(); ++p)
        for (std::size_t k = 0; k < K; ++k) {
            const CVector &w = W.w(p, k);
            val += 2.0 * (quad.v[p * K + k].adjoint() * w)(0, 0).real() - (w.adjoint() * quad.a[p] * w)(0, 0).real();
        }
    return val;
}

inline Precoder project_budgets(Precoder W, const RVector &p_max)
{
    for (std::size_t b = 0; b < W.num_bs(); ++b) {
        double pw = 0.0;
        for (std::size_t p = 0; p < W.num_subcarriers(); ++p)
            for (std::size_t k = 0; k < W.num_users(); ++k)
                pw += W.block(p, k, b).squaredNorm();
        if (pw > p_max(b)) {
            const double s = std::sqrt(p_max(b) / pw);
            for (std::size_t p = 0; p < W.num_subcarriers(); ++p)
                for (std::size_t k = 0; k < W.num_users(); ++k)
                    W.block(p, k, b) *= s;
        }
    }
    return W;
}

// Projected gradient ascent with Armijo backtracking, run until the step
// stalls below tol.
inline Precoder active_pg(const ActiveQuadratic &quad, const RVector &p_max, Precoder W, double tol = 1e-8,
                          std::size_t max_iter = 2000000)
{
    const std::size_t K = W.num_users();
    W = project_budgets(W, p_max);
    double obj = active_objective(quad, W);
    double t = 1.0;
    for (std::size_t it = 0; it < max_iter; ++it) {
        Precoder grad = W;
        for (std::size_t p = 0; p < W.num_subcarriers(); ++p)
            for (std::size_t k = 0; k < K; ++k)
                grad.w(p, k) = quad.v[p * K + k] - quad.a[p] * W.w(p, k);
        double moved = 0.0;
        for (t = std::min(1.0, 4.0 * t);; t *= 0.5) {
            Precoder cand = W;
            for (std::size_t i = 0; i < cand.vectors().size(); ++i)
                cand.vectors()[i] += t * grad.vectors()[i];
            cand = project_budgets(cand, p_max);
            const double c_obj = active_objective(quad, cand);
            double sq = 0.0;
            for (std::size_t i = 0; i < cand.vectors().size(); ++i)
                sq += (cand.vectors()[i] - W.vectors()[i]).squaredNorm();
            if (c_obj >= obj + 1e-4 * sq / t || t < 1e-14) {
                moved = std::sqrt(sq);
                W = cand;
                obj = std::max(obj, c_obj);
                break;
            }
        }
        if (moved < tol)
            break;
    }
    return W;
}

inline double passive_objective(const CMatrix &Lambda, const CVector &nu, double zeta, const CVector &theta)
{
    return -(theta.adjoint() * Lambda * theta)(0, 0).real() + 2.0 * (theta.adjoint() * nu)(0, 0).real() - zeta;
}

// Exhaustive search over a (magnitude x phase) grid per entry for at most two
// entries, followed by shrinking local grids around the incumbent.
inline double passive_grid(const CMatrix &Lambda, const CVector &nu, double zeta, bool unit_modulus = false,
                           int grid = 65)
{
    const auto n = nu.size();
    auto point = [&](double mag, double ph) { return std::polar(mag, ph); };
    const int mags = unit_modulus ? 1 : grid;
    auto mag_at = [&](int i) { return unit_modulus ? 1.0 : static_cast<double>(i) / (grid - 1); };
    auto ph_at = [&](int j) { return 2.0 * std::numbers::pi * j / grid; };

    std::vector<double> best_mag(n), best_ph(n);
    double best = -1e300;
    CVector th(n);
    if (n == 1) {
        for (int i = 0; i < mags; ++i)
            for (int j = 0; j < grid; ++j) {
                th(0) = point(mag_at(i), ph_at(j));
                const double v = passive_objective(Lambda, nu, zeta, th);
                if (v > best) {
                    best = v;
                    best_mag = {mag_at(i)};
                    best_ph = {ph_at(j)};
                }
            }
    } else {
        for (int i0 = 0; i0 < mags; ++i0)
            for (int j0 = 0; j0 < grid; ++j0)
                for (int i1 = 0; i1 < mags; ++i1)
                    for (int j1 = 0; j1 < grid; ++j1) {
                        th(0) = point(mag_at(i0), ph_at(j0));
                        th(1) = point(mag_at(i1), ph_at(j1));
                        const double v = passive_objective(Lambda, nu, zeta, th);
                        if (v > best) {
                            best = v;
                            best_mag = {mag_at(i0), mag_at(i1)};
                            best_ph = {ph_at(j0), ph_at(j1)};
                        }
                    }
    }

    double dm = 1.0 / (grid - 1), dp = 2.0 * std::numbers::pi / grid;
    for (int round = 0; round < 40; ++round) {
        bool improved = true;
        while (improved) {
            improved = false;
            for (Eigen::Index e = 0; e < n; ++e)
                for (int a = -2; a <= 2; ++a)
                    for (int c = -2; c <= 2; ++c) {
                        const double m = unit_modulus ? 1.0 : std::clamp(best_mag[e] + a * dm, 0.0, 1.0);
                        const double ph = best_ph[e] + c * dp;
                        for (Eigen::Index f = 0; f < n; ++f)
                            th(f) = point(f == e ? m : best_mag[f], f == e ? ph : best_ph[f]);
                        const double v = passive_objective(Lambda, nu, zeta, th);
                        if (v > best + 1e-15) {
                            best = v;
                            best_mag[e] = m;
                            best_ph[e] = ph;
                            improved = true;
                        }
                    }
        }
        dm *= 0.5;
        dp *= 0.5;
    }
    return best;
}

inline Precoder random_feasible(const ScenarioConfig &c, Rng &rng)
{
    Precoder W(c.dims);
    for (auto &w : W.vectors())
        for (Eigen::Index i = 0; i < w.size(); ++i)
            w(i) = rng.complex_normal();
    for (std::size_t b = 0; b < c.dims.B; ++b) {
        double pw = 0.0;
        for (std::size_t p = 0; p < c.dims.P; ++p)
            for (std::size_t k = 0; k < c.dims.K; ++k)
                pw += W.block(p, k, b).squaredNorm();
        const double s = std::sqrt(rng.uniform() * c.p_max[b] / pw);
        for (std::size_t p = 0; p < c.dims.P; ++p)
            for (std::size_t k = 0; k < c.dims.K; ++k)
                W.block(p, k, b) *= s;
    }
    return W;
}

} // namespace oracle

#endif
