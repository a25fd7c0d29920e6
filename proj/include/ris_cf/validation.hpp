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


#ifndef RIS_CF_VALIDATION_HPP
#define RIS_CF_VALIDATION_HPP

// Self-check suite behind `ris_cf validate`: the transform identities, the
// quadratic-form rewrites, subsolver feasibility and monotone ascent, each
// on a batch of random tiny instances.

#include "ris_cf/fp_transforms.hpp"
#include "ris_cf/optimizer.hpp"
#include "ris_cf/subsolvers.hpp"
#include "ris_cf/synthetic.hpp"
#include "ris_cf/system_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace ris_cf {

struct CheckResult
{
    std::string name;
    bool passed = true;
    double worst = 0.0; // worst observed error, in the check's own units
    std::string detail;
};

namespace detail {

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

inline CheckResult run_check(const std::string &name, std::size_t count, std::uint64_t seed, double tol,
                             const std::function<double(Rng &)> &trial)
{
    CheckResult res{name, true, 0.0, {}};
    Rng root(seed);
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng = root.split(Stream::Test, {i});
        res.worst = std::max(res.worst, trial(rng));
    }
    res.passed = res.worst <= tol;
    std::ostringstream os;
    os << count << " instances, worst " << res.worst << " (tolerance " << tol << ")";
    res.detail = os.str();
    return res;
}

} // namespace detail

inline std::vector<CheckResult> run_invariant_suite(std::uint64_t seed = 1, std::size_t count = 50)
{
    using detail::rel_err;
    auto tiny = [](Rng &rng) { return random_dims(rng, 2, 2, 3, 2, 3, 2, 4); };
    std::vector<CheckResult> out;

    out.push_back(detail::run_check("surrogate f at rho=SINR equals WSR", count, seed, 1e-9, [&](Rng &rng) {
        const Instance in = random_instance(tiny(rng), rng.split(Stream::Test, {1}));
        const Precoder W = random_precoder(in.config, rng);
        const EffectiveChannel h = effective_channel(in.channels, random_phases(in.config.dims, rng));
        const auto rho = update_rho(h, W, in.config.noise_power);
        return rel_err(surrogate_f(h, W, rho, in.config.noise_power, in.config.weights),
                       wsr(h, W, in.config.noise_power, in.config.weights));
    }));

    out.push_back(detail::run_check("g2 at optimal xi equals g1", count, seed + 1, 1e-9, [&](Rng &rng) {
        const Instance in = random_instance(tiny(rng), rng.split(Stream::Test, {1}));
        const Precoder W = random_precoder(in.config, rng);
        const EffectiveChannel h = effective_channel(in.channels, random_phases(in.config.dims, rng));
        const double s2 = in.config.noise_power;
        const auto mu = compute_mu(update_rho(h, W, s2), in.config.weights, in.config.dims.P);
        const auto xi = update_xi(h, W, mu, s2);
        return rel_err(g2(h, W, xi, mu, s2), g1(h, W, mu, s2));
    }));

    out.push_back(detail::run_check("g5 at optimal varpi equals g4", count, seed + 2, 1e-9, [&](Rng &rng) {
        const Instance in = random_instance(tiny(rng), rng.split(Stream::Test, {1}));
        const Precoder W = random_precoder(in.config, rng);
        const PhaseConfig ph = random_phases(in.config.dims, rng);
        const double s2 = in.config.noise_power;
        const auto mu = compute_mu(update_rho(effective_channel(in.channels, ph), W, s2), in.config.weights,
                                   in.config.dims.P);
        const auto varpi = update_varpi(in.channels, ph, W, mu, s2);
        return rel_err(g5(in.channels, ph, W, varpi, mu, s2), g4(in.channels, ph, W, mu, s2));
    }));

    out.push_back(detail::run_check("g3 matches g2 pointwise", count, seed + 3, 1e-10, [&](Rng &rng) {
        const Instance in = random_instance(tiny(rng), rng.split(Stream::Test, {1}));
        const EffectiveChannel h = effective_channel(in.channels, random_phases(in.config.dims, rng));
        const double s2 = in.config.noise_power;
        const Precoder W0 = random_precoder(in.config, rng);
        const auto mu = compute_mu(update_rho(h, W0, s2), in.config.weights, in.config.dims.P);
        const auto xi = update_xi(h, W0, mu, s2);
        const ActiveQuadratic quad = build_active_quadratic(h, xi, mu, s2);
        const Precoder W = random_precoder(in.config, rng);
        return rel_err(g3(quad, W), g2(h, W, xi, mu, s2));
    }));

    out.push_back(detail::run_check("g6 matches g5 pointwise", count, seed + 4, 1e-10, [&](Rng &rng) {
        Dims d = tiny(rng);
        d.R = std::max<std::size_t>(d.R, 1);
        const Instance in = random_instance(d, rng.split(Stream::Test, {1}));
        const double s2 = in.config.noise_power;
        const Precoder W = random_precoder(in.config, rng);
        const PhaseConfig ph0 = random_phases(d, rng);
        const auto mu = compute_mu(update_rho(effective_channel(in.channels, ph0), W, s2), in.config.weights, d.P);
        const auto varpi = update_varpi(in.channels, ph0, W, mu, s2);
        const PassiveQuadratic quad = build_passive_quadratic(in.channels, W, varpi, mu, s2);
        const PhaseConfig ph = random_phases(d, rng);
        return rel_err(g6(quad, ph.theta), g5(in.channels, ph, W, varpi, mu, s2));
    }));

    out.push_back(detail::run_check("active subsolver KKT residual", count, seed + 5, 1e-6, [&](Rng &rng) {
        const Instance in = random_instance(tiny(rng), rng.split(Stream::Test, {1}));
        const EffectiveChannel h = effective_channel(in.channels, random_phases(in.config.dims, rng));
        const double s2 = in.config.noise_power;
        const Precoder W0 = random_precoder(in.config, rng);
        const auto mu = compute_mu(update_rho(h, W0, s2), in.config.weights, in.config.dims.P);
        const ActiveQuadratic quad = build_active_quadratic(h, update_xi(h, W0, mu, s2), mu, s2);
        const RVector p_max = Eigen::Map<const RVector>(in.config.p_max.data(), in.config.p_max.size());
        const ActiveSolution sol = solve_active(quad, p_max, W0);
        return kkt_residual_active(sol.W, quad, p_max, sol.lambda);
    }));

    out.push_back(detail::run_check("WSR trace is nondecreasing", count / 5 + 1, seed + 6, 1e-8, [&](Rng &rng) {
        const Instance in = random_instance(tiny(rng), rng.split(Stream::Test, {1}));
        OptimizerOptions opts;
        opts.max_outer_iterations = 30;
        const OptimizationResult res = run(in.config, in.channels, opts, rng.split(Stream::Test, {2}));
        double worst = std::max(0.0, res.initial_wsr - res.wsr_trace.front());
        for (std::size_t i = 1; i < res.wsr_trace.size(); ++i)
            worst = std::max(worst, res.wsr_trace[i - 1] - res.wsr_trace[i]);
        return worst;
    }));

    return out;
}

} // namespace ris_cf

#endif
