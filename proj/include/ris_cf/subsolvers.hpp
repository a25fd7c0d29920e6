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


#ifndef RIS_CF_SUBSOLVERS_HPP
#define RIS_CF_SUBSOLVERS_HPP

// In-repo solvers for the two convex QCQPs of the alternating loop.
//
// Active stage:   max_W  -W^H A W + 2 Re{V^H W} - Y
//                 s.t.   per-BS power <= P_max(b)
// solved through its Lagrangian: for fixed duals lambda the maximizer is
// w(p,k) = (a_p + sum_b lambda_b E_b)^+ v(p,k); each BS power is
// nonincreasing in its own dual, so the duals are found by cyclic
// coordinate-wise bisection, accelerated by projected Newton steps.
//
// Passive stage:  max_theta  -theta^H Lambda theta + 2 Re{theta^H nu} - zeta
//                 s.t.       |theta_n| <= 1
// solved by projected gradient ascent with step 1/L, started from the
// solution of the same dual iteration.

#include "ris_cf/fp_transforms.hpp"
#include "ris_cf/system_metrics.hpp"
#include "ris_cf/types.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ris_cf {

struct SolverOptions
{
    std::size_t max_iterations = 500;
    // active: relative power mismatch accepted for an active constraint;
    // passive: sup-norm of the projected-gradient step
    double kkt_tolerance = 1e-10;
    double dual_bisection_tolerance = 1e-14; // relative width of the dual bracket
    double step_shrink = 0.5;
};

inline void validate(const SolverOptions &o)
{
    if (o.max_iterations < 1)
        throw std::invalid_argument("max_iterations must be >= 1");
    if (!(o.kkt_tolerance > 0.0) || !(o.dual_bisection_tolerance > 0.0))
        throw std::invalid_argument("solver tolerances must be positive");
    if (!(o.step_shrink > 0.0 && o.step_shrink < 1.0))
        throw std::invalid_argument("step_shrink must lie in (0, 1)");
}

inline SolverOptions default_active_options() { return {}; }

inline SolverOptions default_passive_options()
{
    return {.max_iterations = 5000000, .kkt_tolerance = 1e-8, .dual_bisection_tolerance = 1e-14, .step_shrink = 0.5};
}

namespace detail {

inline void require_psd(const CMatrix &m, const char *what)
{
    if (m.size() == 0)
        return;
    const Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    if (es.eigenvalues().minCoeff() < -1e-8 * scale)
        throw std::invalid_argument(std::string(what) + " is not positive semidefinite");
}

/// The a_p blocks in their eigenbases. Eigenvalues at roundoff level count
/// as exact zeros and the matching components of every v are dropped when
/// they are roundoff too. `delta` weights the null-space block so that the
/// Lagrangian maximizer is unique at zero duals.
struct ActiveBasis
{
    std::vector<CMatrix> U;
    std::vector<RVector> s;
    std::vector<Eigen::VectorXi> null_mask;
    std::vector<CVector> v;
    double delta = 0.0;
};

inline ActiveBasis active_basis(const ActiveQuadratic &quad, const RVector &p_max)
{
    ActiveBasis basis;
    basis.delta = 1e-12 / p_max.sum();
    const std::size_t P = quad.a.size();
    const std::size_t K = P == 0 ? 0 : quad.v.size() / P;
    for (std::size_t p = 0; p < P; ++p) {
        const Eigen::SelfAdjointEigenSolver<CMatrix> es(quad.a[p]);
        RVector s = es.eigenvalues();
        const double cut = 1e-13 * std::max(s.cwiseAbs().maxCoeff(), 0.0);
        Eigen::VectorXi mask = Eigen::VectorXi::Zero(s.size());
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) <= cut) {
                s(i) = 0.0;
                mask(i) = 1;
            }
        for (std::size_t k = 0; k < K; ++k) {
            CVector vt = es.eigenvectors().adjoint() * quad.v[p * K + k];
            const double vcut = 1e-13 * vt.norm();
            for (Eigen::Index i = 0; i < vt.size(); ++i)
                if (mask(i) && std::abs(vt(i)) <= vcut)
                    vt(i) = 0.0;
            basis.v.push_back(std::move(vt));
        }
        basis.U.push_back(es.eigenvectors());
        basis.s.push_back(std::move(s));
        basis.null_mask.push_back(std::move(mask));
    }
    return basis;
}

/// Solves (a_p + D_lambda + delta on the null space) x = rhs in the basis of
/// a_p. The system is factored as R^H R from a QR of its square-root stack
/// [diag(sqrt(s + delta)); D^(1/2) U], so no cross terms are ever formed.
class LagrangianSystem
{
  public:
    LagrangianSystem(const ActiveBasis &basis, std::size_t p, const RVector &lambda, std::size_t M)
        : u_(basis.U[p])
    {
        const Eigen::Index n = u_.rows();
        CMatrix z = CMatrix::Zero(2 * n, n);
        z.topRows(n).diagonal() =
            (basis.s[p] + basis.delta * basis.null_mask[p].cast<double>()).cwiseSqrt().cast<cplx>();
        for (Eigen::Index b = 0; b < lambda.size(); ++b) {
            const auto rows = Eigen::seqN(b * static_cast<Eigen::Index>(M), static_cast<Eigen::Index>(M));
            z.bottomRows(n)(rows, Eigen::all) = std::sqrt(lambda(b)) * u_(rows, Eigen::all);
        }
        const Eigen::HouseholderQR<CMatrix> qr(z);
        r_ = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
    }

    CVector solve(const CVector &rhs) const { return solve_rotated(u_.adjoint() * rhs); }
    CVector solve_rotated(const CVector &rhs) const
    {
        const CVector y = r_.adjoint().triangularView<Eigen::Lower>().solve(rhs);
        return u_ * r_.triangularView<Eigen::Upper>().solve(y);
    }

  private:
    const CMatrix &u_;
    CMatrix r_;
};

/// Lagrangian maximizer for fixed duals.
inline Precoder active_primal(const ActiveBasis &basis, const RVector &lambda, const Precoder &shape)
{
    Precoder W = shape;
    const std::size_t K = W.num_users(), M = W.bs_antennas();
    for (std::size_t p = 0; p < W.num_subcarriers(); ++p) {
        const LagrangianSystem sys(basis, p, lambda, M);
        for (std::size_t k = 0; k < K; ++k)
            W.w(p, k) = sys.solve_rotated(basis.v[p * K + k]);
    }
    return W;
}

} // namespace detail

struct ActiveSolution
{
    Precoder W;
    RVector lambda;
    std::size_t iterations = 0;
    double kkt_residual = 0.0;
};

/// Max of stationarity norm, primal infeasibility and complementary
/// slackness violation for the active QCQP.
inline double kkt_residual_active(const Precoder &W, const ActiveQuadratic &quad, const RVector &p_max,
                                  const RVector &lambda)
{
    if ((lambda.array() < 0.0).any())
        throw std::invalid_argument("kkt_residual_active: duals must be nonnegative");
    const std::size_t K = W.num_users(), M = W.bs_antennas();
    double stationarity_sq = 0.0;
    for (std::size_t p = 0; p < W.num_subcarriers(); ++p)
        for (std::size_t k = 0; k < K; ++k) {
            CVector r = quad.a[p] * W.w(p, k) - quad.v[p * K + k];
            for (Eigen::Index b = 0; b < lambda.size(); ++b)
                r.segment(b * M, M) += lambda(b) * W.block(p, k, b);
            stationarity_sq += r.squaredNorm();
        }
    const RVector power = per_bs_power(W);
    double infeasibility = 0.0, slackness = 0.0;
    for (Eigen::Index b = 0; b < power.size(); ++b) {
        infeasibility = std::max(infeasibility, power(b) - p_max(b));
        slackness = std::max(slackness, lambda(b) * std::abs(power(b) - p_max(b)));
    }
    return std::max({std::sqrt(stationarity_sq), infeasibility, slackness});
}

namespace detail {

/// Lagrange dual of the active QCQP at lambda, with the maximizer it
/// induces. dual = sum Re{v^H w} + lambda . p_max - Y.
struct ActiveDualPoint
{
    Precoder W;
    RVector power;
    double dual = 0.0;
};

inline ActiveDualPoint active_dual(const ActiveQuadratic &quad, const ActiveBasis &basis, const RVector &lambda, const RVector &p_max,
                                   const Precoder &shape)
{
    ActiveDualPoint pt{active_primal(basis, lambda, shape), {}, 0.0};
    pt.power = per_bs_power(pt.W);
    const std::size_t K = shape.num_users();
    for (std::size_t p = 0; p < shape.num_subcarriers(); ++p)
        for (std::size_t k = 0; k < K; ++k)
            pt.dual += quad.v[p * K + k].dot(pt.W.w(p, k)).real();
    pt.dual += lambda.dot(p_max) - quad.Y;
    return pt;
}

/// d(to) - d(from) without cancellation: the Lagrangian maximizers satisfy
/// M_to^{-1} - M_from^{-1} = -M_to^{-1} (D_to - D_from) M_from^{-1}, so the
/// change is sum_b dlambda_b (p_max_b - Re sum_{p,k} <w_to_b, w_from_b>).
inline double active_dual_change(const ActiveDualPoint &from, const ActiveDualPoint &to, const RVector &dlambda,
                                 const RVector &p_max)
{
    double change = 0.0;
    for (Eigen::Index b = 0; b < dlambda.size(); ++b) {
        if (dlambda(b) == 0.0)
            continue;
        double cross = 0.0;
        for (std::size_t p = 0; p < from.W.num_subcarriers(); ++p)
            for (std::size_t k = 0; k < from.W.num_users(); ++k)
                cross += to.W.block(p, k, b).dot(from.W.block(p, k, b)).real();
        change += dlambda(b) * (p_max(b) - cross);
    }
    return change;
}

/// Shrinks the blocks of every BS above budget onto it.
inline Precoder scale_into_budgets(Precoder W, const RVector &p_max)
{
    const RVector power = per_bs_power(W);
    for (std::size_t b = 0; b < W.num_bs(); ++b) {
        const auto bi = static_cast<Eigen::Index>(b);
        if (power(bi) <= p_max(bi))
            continue;
        const double s = std::sqrt(p_max(bi) / power(bi));
        for (std::size_t p = 0; p < W.num_subcarriers(); ++p)
            for (std::size_t k = 0; k < W.num_users(); ++k)
                W.block(p, k, b) *= s;
    }
    return W;
}

/// Hessian of the dual: 2 Re sum_{p,k} (E_b w)^H (a_p + D)^+ (E_c w).
inline Eigen::MatrixXd active_dual_hessian(const ActiveBasis &basis, const RVector &lambda, const Precoder &W)
{
    const auto B = lambda.size();
    const std::size_t K = W.num_users(), M = W.bs_antennas();
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(B, B);
    for (std::size_t p = 0; p < W.num_subcarriers(); ++p) {
        const LagrangianSystem sys(basis, p, lambda, M);
        for (std::size_t k = 0; k < K; ++k) {
            CMatrix solved(W.w(p, k).size(), B);
            for (Eigen::Index c = 0; c < B; ++c) {
                CVector e = CVector::Zero(W.w(p, k).size());
                e.segment(c * M, M) = W.block(p, k, c);
                solved.col(c) = sys.solve(e);
            }
            for (Eigen::Index b = 0; b < B; ++b)
                for (Eigen::Index c = 0; c < B; ++c)
                    hess(b, c) += 2.0 * W.block(p, k, b).dot(solved.col(c).segment(b * M, M)).real();
        }
    }
    return 0.5 * (hess + hess.transpose());
}

} // namespace detail

/// Maximizes g3 under the per-BS power budgets.
///
/// The B duals start from `dual_start` (or zero) and get one cyclic sweep of
/// coordinate-wise bisection, which settles which constraints are active.
/// Each BS power is nonincreasing in its own dual, so every coordinate
/// problem is a monotone 1-D root find. Coordinate sweeps alone crawl when
/// the BS constraints are strongly coupled, so the remaining iterations take
/// projected Newton steps on the convex dual, falling back to another
/// bisection sweep whenever the line search stalls.
///
/// When roundoff stops the dual from improving (or ten iterations inside the
/// region do not reach kkt_tolerance), the iterate is accepted if it meets
/// the conditions to sqrt(kkt_tolerance). The result is scaled onto
/// the budgets, and `warm_start` (also scaled) is returned instead if it
/// scores strictly better.
inline ActiveSolution solve_active(const ActiveQuadratic &quad, const RVector &p_max, const Precoder &warm_start,
                                   const SolverOptions &opts = default_active_options(),
                                   std::optional<RVector> dual_start = std::nullopt)
{
    validate(opts);
    const std::size_t B = warm_start.num_bs();
    if (static_cast<std::size_t>(p_max.size()) != B || quad.a.size() != warm_start.num_subcarriers())
        throw std::invalid_argument("solve_active: dimension mismatch");
    for (Eigen::Index b = 0; b < p_max.size(); ++b)
        if (!(p_max(b) > 0.0))
            throw std::invalid_argument("solve_active: power budgets must be positive");
    for (const auto &a : quad.a)
        detail::require_psd(a, "active quadratic block");

    const detail::ActiveBasis basis = detail::active_basis(quad, p_max);
    double a_scale = 0.0;
    for (const auto &a : quad.a)
        a_scale = std::max(a_scale, a.cwiseAbs().maxCoeff());

    RVector lambda = RVector::Zero(static_cast<Eigen::Index>(B));
    if (dual_start && dual_start->size() == lambda.size())
        lambda = dual_start->cwiseMax(0.0);

    const double tol = opts.kkt_tolerance;
    auto power_of = [&](const RVector &l, std::size_t b) {
        return per_bs_power(detail::active_primal(basis, l, warm_start))(static_cast<Eigen::Index>(b));
    };
    // feasible, and each active budget either met or contributing a
    // negligible duality gap lambda_b |P_b - P_max_b|
    const double null_gap = basis.delta * p_max.sum();
    auto kkt_within = [&](const RVector &power, const RVector &l, double t) {
        const double gap_tol = t * l.dot(p_max) + null_gap;
        for (std::size_t b = 0; b < B; ++b) {
            if (power(b) > p_max(b) * (1.0 + t))
                return false;
            const double miss = std::abs(power(b) - p_max(b));
            if (l(b) > 0.0 && miss > t * p_max(b) && l(b) * miss > gap_tol)
                return false;
        }
        return true;
    };
    auto kkt_ok = [&](const RVector &power, const RVector &l) { return kkt_within(power, l, tol); };
    auto bisection_sweep = [&](RVector &l) {
        for (std::size_t b = 0; b < B; ++b) {
            RVector trial = l;
            trial(b) = 0.0;
            if (power_of(trial, b) <= p_max(b) * (1.0 + tol)) {
                l(b) = 0.0;
                continue;
            }
            // bracket: power(lo) > budget >= power(hi)
            double lo = 0.0;
            double hi = l(b) > 0.0 ? l(b) : std::max(a_scale, 1e-300);
            trial(b) = hi;
            double p_hi = power_of(trial, b);
            while (p_hi > p_max(b)) {
                lo = hi;
                hi *= 2.0;
                if (!std::isfinite(hi))
                    return false;
                trial(b) = hi;
                p_hi = power_of(trial, b);
            }
            while (hi - lo > opts.dual_bisection_tolerance * hi && p_hi < p_max(b) * (1.0 - tol)) {
                const double mid = 0.5 * (lo + hi);
                trial(b) = mid;
                const double p_mid = power_of(trial, b);
                if (p_mid > p_max(b)) {
                    lo = mid;
                } else {
                    hi = mid;
                    p_hi = p_mid;
                }
            }
            l(b) = hi;
        }
        return true;
    };

    detail::ActiveDualPoint pt = detail::active_dual(quad, basis, lambda, p_max, warm_start);
    std::size_t iter = 0;
    bool bisect_next = true;
    std::size_t near_iterations = 0; // spent inside the sqrt(tol) region
    while (!kkt_ok(pt.power, lambda)) {
        if (kkt_within(pt.power, lambda, std::sqrt(tol)) && ++near_iterations > 10)
            break; // roundoff floor
        if (++iter > opts.max_iterations)
            throw SolverFailure<Precoder>("solve_active: dual iteration did not converge", pt.W);

        bool progressed = false;
        if (!bisect_next) {
            // epsilon-active set: duals near zero whose gradient pushes them
            // to zero take a diagonally scaled step, the rest a Newton step
            const RVector grad = p_max - pt.power;
            const Eigen::MatrixXd hess = detail::active_dual_hessian(basis, lambda, pt.W);
            RVector scaled(lambda.size());
            for (Eigen::Index b = 0; b < lambda.size(); ++b)
                scaled(b) = hess(b, b) > 0.0 ? grad(b) / hess(b, b) : grad(b);
            const double eps = (lambda - (lambda - scaled).cwiseMax(0.0)).cwiseAbs().maxCoeff();
            std::vector<Eigen::Index> free;
            RVector dir = RVector::Zero(lambda.size());
            for (Eigen::Index b = 0; b < lambda.size(); ++b) {
                if (lambda(b) <= eps && grad(b) > 0.0)
                    dir(b) = -scaled(b);
                else
                    free.push_back(b);
            }
            if (!free.empty()) {
                Eigen::MatrixXd hf(free.size(), free.size());
                RVector gf(free.size());
                for (std::size_t i = 0; i < free.size(); ++i) {
                    gf(i) = grad(free[i]);
                    for (std::size_t j = 0; j < free.size(); ++j)
                        hf(i, j) = hess(free[i], free[j]);
                }
                const Eigen::LDLT<Eigen::MatrixXd> ldlt(hf);
                RVector step = ldlt.info() == Eigen::Success ? RVector(ldlt.solve(-gf)) : RVector(-gf);
                if (!step.allFinite() || step.dot(gf) >= 0.0)
                    step = -gf;
                for (std::size_t i = 0; i < free.size(); ++i)
                    dir(free[i]) = step(i);
            }
            for (double alpha = 1.0; alpha > 1e-12; alpha *= opts.step_shrink) {
                const RVector cand = (lambda + alpha * dir).cwiseMax(0.0);
                detail::ActiveDualPoint cpt = detail::active_dual(quad, basis, cand, p_max, warm_start);
                const double change = detail::active_dual_change(pt, cpt, cand - lambda, p_max);
                if (change <= 1e-4 * grad.dot(cand - lambda)) {
                    progressed = change < 0.0 || kkt_ok(cpt.power, cand);
                    lambda = cand;
                    pt = std::move(cpt);
                    break;
                }
            }
        }
        if (!progressed) {
            const RVector before = lambda;
            if (!bisection_sweep(lambda))
                throw SolverFailure<Precoder>("solve_active: dual bracket diverged", pt.W);
            detail::ActiveDualPoint swept = detail::active_dual(quad, basis, lambda, p_max, warm_start);
            const double change = detail::active_dual_change(pt, swept, lambda - before, p_max);
            pt = std::move(swept);
            // neither step can lower the dual any further: roundoff floor
            if (!bisect_next && !(change < 0.0)) {
                if (kkt_within(pt.power, lambda, std::sqrt(tol)))
                    break;
                throw SolverFailure<Precoder>("solve_active: dual iteration stalled", pt.W);
            }
        }
        bisect_next = false;
    }

    ActiveSolution sol{detail::scale_into_budgets(std::move(pt.W), p_max), lambda, iter, 0.0};
    sol.kkt_residual = kkt_residual_active(sol.W, quad, p_max, lambda);

    if (warm_start.all_finite()) {
        Precoder warm = detail::scale_into_budgets(warm_start, p_max);
        if (g3(quad, warm) > g3(quad, sol.W))
            sol.W = std::move(warm);
    }
    return sol;
}

struct PassiveSolution
{
    PhaseConfig phases;
    std::size_t iterations = 0;
    double residual = 0.0; // sup-norm of the last projected-gradient step
};

/// Clamps each entry onto the closed unit disk, keeping its phase.
inline CVector project_unit_disk(const CVector &theta)
{
    CVector out = theta;
    for (Eigen::Index n = 0; n < out.size(); ++n) {
        const double m = std::abs(out(n));
        if (m > 1.0)
            out(n) /= m;
    }
    return out;
}

/// theta_n / |theta_n|, with zero entries mapped to 1.
inline CVector project_unit_circle(const CVector &theta)
{
    CVector out = theta;
    for (Eigen::Index n = 0; n < out.size(); ++n) {
        const double m = std::abs(out(n));
        out(n) = m > 0.0 ? out(n) / m : cplx(1.0, 0.0);
    }
    return out;
}

namespace detail {

/// The relaxed passive problem is the active one with R*N single-antenna
/// "base stations" of unit budget; its dual solution is a starting point
/// from which projected gradient needs few steps. Falls back to `theta`
/// when the dual iteration fails or does worse.
inline CVector passive_dual_start(const PassiveQuadratic &quad, const CVector &theta)
{
    const auto n = static_cast<std::size_t>(theta.size());
    ActiveQuadratic as_active{{quad.Lambda}, {quad.nu}, quad.zeta, {1.0}};
    Precoder shape(Dims{.B = n, .R = 0, .K = 1, .P = 1, .M = 1, .U = 1, .N = 1});
    shape.w(0, 0) = theta;
    CVector out;
    try {
        out = solve_active(as_active, RVector::Ones(theta.size()), shape).W.w(0, 0);
    } catch (const SolverFailure<Precoder> &e) {
        out = e.last_iterate().w(0, 0); // still usually closer than theta
    }
    out = project_unit_disk(out);
    if (out.allFinite() && g6(quad, out) >= g6(quad, theta))
        return out;
    return theta;
}

} // namespace detail

/// Maximizes g6 over the relaxed set, then (unit-modulus mode) normalizes
/// every entry onto the unit circle.
inline PassiveSolution solve_passive(const PassiveQuadratic &quad, PhaseMode mode, const PhaseConfig &warm_start,
                                     const SolverOptions &opts = default_passive_options())
{
    validate(opts);
    const Eigen::Index n = quad.nu.size();
    if (quad.Lambda.rows() != n || quad.Lambda.cols() != n || warm_start.theta.size() != n)
        throw std::invalid_argument("solve_passive: dimension mismatch");

    PassiveSolution sol;
    sol.phases.mode = mode;
    if (n == 0) {
        sol.phases.theta = CVector(0);
        return sol;
    }

    const Eigen::SelfAdjointEigenSolver<CMatrix> es(quad.Lambda, Eigen::EigenvaluesOnly);
    const double l_max = es.eigenvalues().maxCoeff();
    if (es.eigenvalues().minCoeff() < -1e-8 * std::max(1.0, std::abs(l_max)))
        throw std::invalid_argument("passive quadratic is not positive semidefinite");

    CVector theta = project_unit_disk(warm_start.theta);
    const double nu_scale = quad.nu.cwiseAbs().maxCoeff();
    if (l_max <= 1e-14 * std::max(nu_scale, 1e-300)) {
        // linear objective: each entry aligns with nu on the unit circle
        for (Eigen::Index i = 0; i < n; ++i)
            if (std::abs(quad.nu(i)) > 0.0)
                theta(i) = quad.nu(i) / std::abs(quad.nu(i));
        sol.iterations = 1;
    } else {
        theta = detail::passive_dual_start(quad, theta);
        double step = 1.0 / l_max;
        // objective from a cached Lambda * theta: one mat-vec per iteration
        auto objective = [&](const CVector &t, const CVector &lt) {
            return -t.dot(lt).real() + 2.0 * t.dot(quad.nu).real() - quad.zeta;
        };
        CVector lt = quad.Lambda * theta;
        double obj = objective(theta, lt);
        bool converged = false;
        while (!converged) {
            if (++sol.iterations > opts.max_iterations) {
                sol.phases.theta = mode == PhaseMode::UnitModulus ? project_unit_circle(theta) : theta;
                throw SolverFailure<PhaseConfig>("solve_passive: projected gradient did not converge", sol.phases);
            }
            const CVector cand = project_unit_disk(theta + step * (quad.nu - lt));
            CVector lc = quad.Lambda * cand;
            const double cand_obj = objective(cand, lc);
            const double slack = 1e-12 * std::max({1.0, std::abs(obj), std::abs(quad.zeta)});
            if (cand_obj < obj - slack) {
                step *= opts.step_shrink;
                continue;
            }
            sol.residual = (cand - theta).cwiseAbs().maxCoeff();
            converged = sol.residual <= opts.kkt_tolerance;
            theta = cand;
            lt = std::move(lc);
            obj = cand_obj;
        }
    }

    sol.phases.theta = mode == PhaseMode::UnitModulus ? project_unit_circle(theta) : theta;
    return sol;
}

} // namespace ris_cf

#endif
