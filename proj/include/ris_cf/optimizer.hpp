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


#ifndef RIS_CF_OPTIMIZER_HPP
#define RIS_CF_OPTIMIZER_HPP

#include "ris_cf/channel_model.hpp"
#include "ris_cf/fp_transforms.hpp"
#include "ris_cf/rng.hpp"
#include "ris_cf/subsolvers.hpp"
#include "ris_cf/system_metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ris_cf {

struct OptimizerOptions
{
    std::size_t max_outer_iterations = 100;
    double wsr_relative_tolerance = 1e-4;
    PhaseMode phase_mode = PhaseMode::Relaxed;
    SolverOptions active = default_active_options();
    SolverOptions passive = default_passive_options();
    bool trace = false;
};

inline void validate(const OptimizerOptions &o)
{
    if (o.max_outer_iterations < 1)
        throw std::invalid_argument("max_outer_iterations must be >= 1");
    if (!(o.wsr_relative_tolerance > 0.0))
        throw std::invalid_argument("wsr_relative_tolerance must be positive");
    validate(o.active);
    validate(o.passive);
}

/// One outer iteration. `surrogate` holds f(Theta, W, rho) in bits after the
/// rho, xi, W, varpi and Theta updates; it is filled only when tracing.
struct TraceRecord
{
    std::size_t iteration = 0;
    double wsr = 0.0;
    std::array<double, 5> surrogate{};
    RVector bs_power;
    std::size_t active_iterations = 0;
    std::size_t passive_iterations = 0;
};

struct OptimizationResult
{
    PhaseConfig phases;
    Precoder W;
    double initial_wsr = 0.0;
    std::vector<double> wsr_trace; // one entry per outer iteration
    std::vector<TraceRecord> trace;
    std::size_t iterations = 0;
    bool converged = false;

    double final_wsr() const { return wsr_trace.empty() ? initial_wsr : wsr_trace.back(); }
};

/// Subsolver failure inside the loop; carries everything computed so far.
class OptimizationFailure : public std::runtime_error
{
  public:
    OptimizationFailure(const std::string &what, OptimizationResult partial)
        : std::runtime_error(what), partial_(std::move(partial))
    {
    }

    const OptimizationResult &partial() const noexcept { return partial_; }

  private:
    OptimizationResult partial_;
};

/// Random feasible starting point: theta entries with unit modulus and
/// uniform phases in either mode; W entries of one magnitude per BS with uniform
/// phases, scaled so every BS spends exactly its budget.
inline std::pair<PhaseConfig, Precoder> initialize(const ScenarioConfig &config, const Rng &rng,
                                                   PhaseMode mode = PhaseMode::Relaxed)
{
    validate(config);
    const Dims &d = config.dims;

    PhaseConfig phases;
    phases.mode = mode;
    phases.theta.resize(static_cast<Eigen::Index>(d.rn()));
    Rng theta_rng = rng.split(Stream::InitPhases);
    for (Eigen::Index n = 0; n < phases.theta.size(); ++n)
        phases.theta(n) = std::polar(1.0, theta_rng.phase());

    Precoder W(d);
    Rng w_rng = rng.split(Stream::InitPrecoder);
    const double entries = static_cast<double>(d.P * d.K * d.M);
    for (std::size_t p = 0; p < d.P; ++p)
        for (std::size_t k = 0; k < d.K; ++k)
            for (std::size_t b = 0; b < d.B; ++b) {
                const double mag = std::sqrt(config.p_max[b] / entries);
                for (std::size_t m = 0; m < d.M; ++m)
                    W.block(p, k, b)(m) = std::polar(mag, w_rng.phase());
            }
    return {std::move(phases), std::move(W)};
}

/// Alternating ascent: rho -> xi -> W -> varpi -> Theta, repeated until the
/// relative change of the weighted sum-rate drops below tolerance. With no
/// surfaces the varpi/Theta steps are skipped.
inline OptimizationResult run(const ScenarioConfig &config, const ChannelSet &channels,
                              const OptimizerOptions &options, const Rng &rng)
{
    validate(config);
    validate(options);
    if (!(channels.dims() == config.dims))
        throw std::invalid_argument("run: channel dimensions do not match the scenario");

    const Dims &d = config.dims;
    const double sigma2 = config.noise_power;
    const std::span<const double> eta(config.weights);
    const RVector p_max = Eigen::Map<const RVector>(config.p_max.data(), static_cast<Eigen::Index>(d.B));

    OptimizationResult res;
    std::tie(res.phases, res.W) = initialize(config, rng, options.phase_mode);
    EffectiveChannel h = effective_channel(channels, res.phases);
    double current = wsr(h, res.W, sigma2, eta);
    res.initial_wsr = current;

    std::optional<RVector> duals;
    for (std::size_t it = 1; it <= options.max_outer_iterations; ++it) {
        TraceRecord rec;
        rec.iteration = it;

        const std::vector<double> rho = update_rho(h, res.W, sigma2);
        const std::vector<double> mu = compute_mu(rho, eta, d.P);
        if (options.trace)
            rec.surrogate[0] = surrogate_f(h, res.W, rho, sigma2, eta);

        const std::vector<CVector> xi = update_xi(h, res.W, mu, sigma2);
        if (options.trace)
            rec.surrogate[1] = surrogate_f(h, res.W, rho, sigma2, eta);

        const ActiveQuadratic active = build_active_quadratic(h, xi, mu, sigma2);
        try {
            ActiveSolution sol = solve_active(active, p_max, res.W, options.active, duals);
            rec.active_iterations = sol.iterations;
            res.W = std::move(sol.W);
            duals = std::move(sol.lambda);
        } catch (const SolverFailure<Precoder> &e) {
            throw OptimizationFailure(e.what(), res);
        }
        if (options.trace)
            rec.surrogate[2] = surrogate_f(h, res.W, rho, sigma2, eta);

        if (d.R > 0) {
            const std::vector<CVector> varpi = update_varpi(channels, res.phases, res.W, mu, sigma2);
            if (options.trace)
                rec.surrogate[3] = surrogate_f(h, res.W, rho, sigma2, eta);

            const PassiveQuadratic passive = build_passive_quadratic(channels, res.W, varpi, mu, sigma2);
            try {
                PassiveSolution sol = solve_passive(passive, options.phase_mode, res.phases, options.passive);
                rec.passive_iterations = sol.iterations;
                // the unit-circle projection can lose ground; keep the old phases then
                if (g6(passive, sol.phases.theta) >= g6(passive, res.phases.theta))
                    res.phases = std::move(sol.phases);
            } catch (const SolverFailure<PhaseConfig> &e) {
                throw OptimizationFailure(e.what(), res);
            }
            h = effective_channel(channels, res.phases);
            if (options.trace)
                rec.surrogate[4] = surrogate_f(h, res.W, rho, sigma2, eta);
        } else if (options.trace) {
            rec.surrogate[3] = rec.surrogate[4] = rec.surrogate[2];
        }

        const double next = wsr(h, res.W, sigma2, eta);
        rec.wsr = next;
        rec.bs_power = per_bs_power(res.W);
        res.wsr_trace.push_back(next);
        res.iterations = it;
        if (options.trace)
            res.trace.push_back(std::move(rec));

        const bool done = std::abs(next - current) / std::max(next, 1.0) < options.wsr_relative_tolerance;
        current = next;
        if (done) {
            res.converged = true;
            break;
        }
    }
    return res;
}

} // namespace ris_cf

#endif
