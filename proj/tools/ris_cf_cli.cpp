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


// Command-line front end:
//   ris_cf run      --config FILE [--output CSV] [--seed N] [--trials N] [--jobs N]
//   ris_cf single   --config FILE --distance L [--variant V] [--trial T]
//   ris_cf validate [--seed N] [--count N]

#include "ris_cf/ris_cf.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace {

int cmd_run(const std::string &config, const std::optional<std::string> &output, const std::optional<std::uint64_t> &seed,
            const std::optional<std::size_t> &trials, const std::optional<std::size_t> &jobs, bool no_wall_time,
            bool quiet)
{
    ris_cf::ExperimentSpec spec = ris_cf::parse_config_file(config);
    if (output)
        spec.output = *output;
    if (seed)
        spec.seed = spec.base.seed = *seed;
    if (trials)
        spec.trials = *trials;
    if (jobs)
        spec.parallelism = *jobs;
    if (no_wall_time)
        spec.record_wall_time = false;

    const auto records = ris_cf::run_sweep(spec, quiet ? nullptr : &std::cerr);
    ris_cf::print_summary(std::cout, ris_cf::summarize(records));

    std::size_t failed = 0;
    for (const auto &r : records)
        failed += r.status == ris_cf::CellStatus::Failed;
    if (failed > 0) {
        std::cerr << failed << " cell(s) failed\n";
        return 2;
    }
    return 0;
}

int cmd_single(const std::string &config, double distance, const std::string &variant_name, std::size_t trial,
               const std::optional<std::uint64_t> &seed)
{
    ris_cf::ExperimentSpec spec = ris_cf::parse_config_file(config);
    if (seed)
        spec.seed = spec.base.seed = *seed;
    const auto variant = ris_cf::parse_variant(variant_name);
    if (!variant)
        throw CLI::ValidationError("--variant", "unknown variant " + variant_name);

    const ris_cf::Cell cell = ris_cf::find_cell(spec, distance, *variant, trial);
    const ris_cf::CellSetup setup = ris_cf::prepare_cell(spec, cell);
    ris_cf::OptimizerOptions opts = setup.options;
    opts.trace = true;

    std::printf("# L=%g m variant=%s trial=%zu cell_seed=%llu\n", distance, variant_name.c_str(), trial,
                static_cast<unsigned long long>(setup.rng.seed()));
    std::printf("%5s %14s %14s %14s %14s %14s %14s %8s %8s  bs_power\n", "iter", "wsr", "f_rho", "f_xi", "f_W",
                "f_varpi", "f_theta", "act_it", "pas_it");

    int status = 0;
    ris_cf::OptimizationResult res;
    try {
        res = ris_cf::run(setup.config, setup.channels, opts, setup.rng);
    } catch (const ris_cf::OptimizationFailure &e) {
        std::cerr << "optimization failed: " << e.what() << '\n';
        res = e.partial();
        status = 2;
    }
    std::printf("%5d %14.8f\n", 0, res.initial_wsr);
    for (const auto &t : res.trace) {
        std::printf("%5zu %14.8f %14.8f %14.8f %14.8f %14.8f %14.8f %8zu %8zu ", t.iteration, t.wsr, t.surrogate[0],
                    t.surrogate[1], t.surrogate[2], t.surrogate[3], t.surrogate[4], t.active_iterations,
                    t.passive_iterations);
        for (Eigen::Index b = 0; b < t.bs_power.size(); ++b)
            std::printf(" %.6g", t.bs_power(b));
        std::printf("\n");
    }
    std::printf("# final_wsr=%.10f iterations=%zu converged=%s\n", res.final_wsr(), res.iterations,
                res.converged ? "true" : "false");
    return status;
}

int cmd_validate(std::uint64_t seed, std::size_t count)
{
    bool ok = true;
    for (const auto &check : ris_cf::run_invariant_suite(seed, count)) {
        std::cout << (check.passed ? "[PASS] " : "[FAIL] ") << check.name << ": " << check.detail << '\n';
        ok = ok && check.passed;
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Joint BS/RIS precoding simulator for RIS-aided cell-free downlink"};
    app.require_subcommand(1);

    std::string config;
    std::optional<std::string> output;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials, jobs;
    bool no_wall_time = false, quiet = false;
    auto *run = app.add_subcommand("run", "Distance sweep over all configured variants");
    run->add_option("-c,--config", config, "Experiment config file")->required()->check(CLI::ExistingFile);
    run->add_option("-o,--output", output, "Results CSV (overrides config)");
    run->add_option("-s,--seed", seed, "Sweep seed (overrides config)");
    run->add_option("-t,--trials", trials, "Trials per point (overrides config)")->check(CLI::PositiveNumber);
    run->add_option("-j,--jobs", jobs, "Cells run in parallel (overrides config)")->check(CLI::PositiveNumber);
    run->add_flag("--no-wall-time", no_wall_time, "Write wall_s as 0 so reruns are byte-identical");
    run->add_flag("-q,--quiet", quiet, "Do not echo rows to stderr");

    double distance = 30.0;
    std::string variant = "ideal-ris";
    std::size_t trial = 0;
    auto *single = app.add_subcommand("single", "One optimization with a per-iteration trace");
    single->add_option("-c,--config", config, "Experiment config file")->required()->check(CLI::ExistingFile);
    single->add_option("-L,--distance", distance, "User-cluster distance L in meters")->required();
    single->add_option("-v,--variant", variant, "no-ris | ideal-ris | continuous-phase");
    single->add_option("-t,--trial", trial, "Trial index (selects the cell seed)");
    single->add_option("-s,--seed", seed, "Sweep seed (overrides config)");

    std::uint64_t validate_seed = 1;
    std::size_t count = 50;
    auto *validate = app.add_subcommand("validate", "Invariant suite on random tiny instances");
    validate->add_option("-s,--seed", validate_seed, "Seed for the random instances");
    validate->add_option("-n,--count", count, "Instances per check")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run)
            return cmd_run(config, output, seed, trials, jobs, no_wall_time, quiet);
        if (*single)
            return cmd_single(config, distance, variant, trial, seed);
        return cmd_validate(validate_seed, count);
    } catch (const ris_cf::ParseError &e) {
        std::cerr << "config error: " << e.what() << '\n';
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return 1;
}
