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


#ifndef RIS_CF_EXPERIMENT_HPP
#define RIS_CF_EXPERIMENT_HPP

// Distance-sweep experiment: config parsing, Monte-Carlo cells, results
// table.
//
// Config format: one `key = value` per line, `#` starts a comment. dB/dBm
// values are converted to linear watts on load. See configs/default.cfg for
// the full key set.
//
// Random streams: the sweep seed and (L index, trial) derive the cell seed;
// user placement, every channel block and both initial points draw from
// their own tagged child streams of that cell seed (see Stream). All
// variants of one (L, trial) therefore see the same users, the same direct
// channels and the same initial precoder.

#include "ris_cf/channel_model.hpp"
#include "ris_cf/optimizer.hpp"
#include "ris_cf/rng.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <thread>
#include <vector>

namespace ris_cf {

enum class Variant
{
    NoRis,
    IdealRis,
    ContinuousPhase,
};

inline std::string_view to_string(Variant v)
{
    switch (v) {
    case Variant::NoRis: return "no-ris";
    case Variant::IdealRis: return "ideal-ris";
    case Variant::ContinuousPhase: return "continuous-phase";
    }
    return "?";
}

inline std::optional<Variant> parse_variant(std::string_view s)
{
    for (Variant v : {Variant::NoRis, Variant::IdealRis, Variant::ContinuousPhase})
        if (s == to_string(v))
            return v;
    return std::nullopt;
}

struct ExperimentSpec
{
    ScenarioConfig base = default_scenario();
    double sweep_start_m = 10.0;
    double sweep_stop_m = 80.0;
    double sweep_step_m = 5.0;
    std::size_t trials = 50;
    std::vector<Variant> variants{Variant::NoRis, Variant::IdealRis, Variant::ContinuousPhase};
    std::string output = "results.csv";
    std::uint64_t seed = 1;
    OptimizerOptions optimizer;
    std::size_t parallelism = 1;
    bool record_wall_time = true;

    std::vector<double> sweep_points() const
    {
        std::vector<double> pts;
        for (std::size_t i = 0;; ++i) {
            const double L = sweep_start_m + static_cast<double>(i) * sweep_step_m;
            if (L > sweep_stop_m + 1e-9 * sweep_step_m)
                break;
            pts.push_back(L);
        }
        return pts;
    }
};

inline void validate(const ExperimentSpec &s)
{
    if (!(s.sweep_start_m <= s.sweep_stop_m))
        throw std::invalid_argument("sweep start must not exceed sweep stop");
    if (!(s.sweep_step_m > 0.0))
        throw std::invalid_argument("sweep step must be positive");
    if (s.trials < 1)
        throw std::invalid_argument("trials must be >= 1");
    if (s.variants.empty())
        throw std::invalid_argument("at least one variant is required");
    if (s.parallelism < 1)
        throw std::invalid_argument("parallelism must be >= 1");
    validate(s.base);
    validate(s.optimizer);
}

class ParseError : public std::runtime_error
{
  public:
    ParseError(std::string key, std::size_t line, const std::string &msg)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + key + ": " + msg : key + ": " + msg),
          key_(std::move(key)), line_(line)
    {
    }

    const std::string &key() const noexcept { return key_; }
    std::size_t line() const noexcept { return line_; }

  private:
    std::string key_;
    std::size_t line_;
};

namespace detail {

inline std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

template <typename T>
std::optional<T> parse_number(std::string_view s)
{
    s = trim(s);
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    T value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        return std::nullopt;
    return value;
}

} // namespace detail

/// Parses the structured-text experiment config.
inline ExperimentSpec parse_config(std::istream &in)
{
    static const std::set<std::string, std::less<>> required{
        "num_bs",        "num_ris",      "num_users", "num_subcarriers", "bs_antennas",
        "user_antennas", "ris_elements", "P_bmax_db", "noise_dbm"};
    static const std::set<std::string, std::less<>> optional{
        "bs_positions",         "ris_positions",       "user_radius",          "user_weights",
        "pl_bs_user_ref_db",    "pl_bs_user_exponent", "pl_bs_ris_ref_db",     "pl_bs_ris_exponent",
        "pl_ris_user_ref_db",   "pl_ris_user_exponent", "sweep_start_m",       "sweep_stop_m",
        "sweep_step_m",         "trials",              "variants",             "seed",
        "output",               "max_outer_iterations", "wsr_relative_tolerance", "parallelism",
        "record_wall_time"};

    struct Entry
    {
        std::string value;
        std::size_t line;
    };
    std::map<std::string, Entry, std::less<>> entries;

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line(raw);
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(std::string(line), line_no, "expected `key = value`");
        const std::string key(detail::trim(line.substr(0, eq)));
        const std::string value(detail::trim(line.substr(eq + 1)));
        if (!required.contains(key) && !optional.contains(key))
            throw ParseError(key, line_no, "unknown key");
        if (entries.contains(key))
            throw ParseError(key, line_no, "duplicate key");
        if (value.empty())
            throw ParseError(key, line_no, "missing value");
        entries.emplace(key, Entry{value, line_no});
    }

    std::string missing;
    for (const auto &k : required)
        if (!entries.contains(k))
            missing += (missing.empty() ? "" : ", ") + k;
    if (!missing.empty())
        throw ParseError(missing, 0, "missing required key(s)");

    auto fail = [&](std::string_view key, const std::string &msg) -> ParseError {
        return ParseError(std::string(key), entries.at(std::string(key)).line, msg);
    };
    auto get_count = [&](std::string_view key, bool allow_zero) {
        const auto v = detail::parse_number<std::size_t>(entries.find(key)->second.value);
        if (!v || (!allow_zero && *v == 0))
            throw fail(key, allow_zero ? "expected a non-negative integer" : "expected a positive integer");
        return *v;
    };
    auto get_real = [&](std::string_view key) {
        const auto v = detail::parse_number<double>(entries.find(key)->second.value);
        if (!v || !std::isfinite(*v))
            throw fail(key, "expected a real number");
        return *v;
    };
    auto get_points = [&](std::string_view key) {
        std::vector<Point> pts;
        for (auto item : detail::split(entries.find(key)->second.value, ';')) {
            const auto xy = detail::split(item, ',');
            const auto x = xy.size() == 2 ? detail::parse_number<double>(xy[0]) : std::nullopt;
            const auto y = xy.size() == 2 ? detail::parse_number<double>(xy[1]) : std::nullopt;
            if (!x || !y)
                throw fail(key, "expected `x, y; x, y; ...`");
            pts.push_back({*x, *y});
        }
        return pts;
    };
    auto has = [&](std::string_view key) { return entries.contains(key); };

    ExperimentSpec spec;
    ScenarioConfig &c = spec.base;
    c.dims.B = get_count("num_bs", false);
    c.dims.R = get_count("num_ris", true);
    c.dims.K = get_count("num_users", false);
    c.dims.P = get_count("num_subcarriers", false);
    c.dims.M = get_count("bs_antennas", false);
    c.dims.U = get_count("user_antennas", false);
    c.dims.N = get_count("ris_elements", false);
    c.p_max.assign(c.dims.B, db_to_linear(get_real("P_bmax_db")));
    c.noise_power = dbm_to_watts(get_real("noise_dbm"));

    if (has("bs_positions"))
        c.bs_positions = get_points("bs_positions");
    if (c.bs_positions.size() != c.dims.B)
        throw ParseError("bs_positions", has("bs_positions") ? entries.at("bs_positions").line : 0,
                         "need exactly num_bs points (defaults cover num_bs = 2 only)");
    if (has("ris_positions"))
        c.ris_positions = get_points("ris_positions");
    else if (c.dims.R != 2)
        c.ris_positions.clear();
    if (c.ris_positions.size() != c.dims.R)
        throw ParseError("ris_positions", has("ris_positions") ? entries.at("ris_positions").line : 0,
                         "need exactly num_ris points (defaults cover num_ris = 2 only)");
    if (has("user_radius")) {
        c.user_radius = get_real("user_radius");
        if (c.user_radius < 0.0)
            throw fail("user_radius", "must be non-negative");
    }
    c.weights.assign(c.dims.K, 1.0);
    if (has("user_weights")) {
        const auto parts = detail::split(entries.at("user_weights").value, ',');
        if (parts.size() != c.dims.K)
            throw fail("user_weights", "need exactly num_users weights");
        for (std::size_t k = 0; k < parts.size(); ++k) {
            const auto w = detail::parse_number<double>(parts[k]);
            if (!w || !(*w > 0.0))
                throw fail("user_weights", "weights must be positive reals");
            c.weights[k] = *w;
        }
    }
    auto link = [&](LinkBudget &lb, std::string_view ref_key, std::string_view exp_key) {
        if (has(ref_key))
            lb.ref_loss_db = get_real(ref_key);
        if (has(exp_key)) {
            lb.exponent = get_real(exp_key);
            if (!(lb.exponent > 0.0))
                throw fail(exp_key, "exponent must be positive");
        }
    };
    link(c.bs_user, "pl_bs_user_ref_db", "pl_bs_user_exponent");
    link(c.bs_ris, "pl_bs_ris_ref_db", "pl_bs_ris_exponent");
    link(c.ris_user, "pl_ris_user_ref_db", "pl_ris_user_exponent");

    if (has("sweep_start_m"))
        spec.sweep_start_m = get_real("sweep_start_m");
    if (has("sweep_stop_m"))
        spec.sweep_stop_m = get_real("sweep_stop_m");
    if (has("sweep_step_m"))
        spec.sweep_step_m = get_real("sweep_step_m");
    if (spec.sweep_start_m > spec.sweep_stop_m)
        throw ParseError("sweep_start_m", has("sweep_start_m") ? entries.at("sweep_start_m").line : 0,
                         "must not exceed sweep_stop_m");
    if (!(spec.sweep_step_m > 0.0))
        throw ParseError("sweep_step_m", has("sweep_step_m") ? entries.at("sweep_step_m").line : 0,
                         "must be positive");
    if (has("trials"))
        spec.trials = get_count("trials", false);
    if (has("variants")) {
        std::set<Variant> chosen;
        for (auto v : detail::split(entries.at("variants").value, ',')) {
            const auto parsed = parse_variant(v);
            if (!parsed)
                throw fail("variants", "unknown variant `" + std::string(v) +
                                           "` (expected no-ris, ideal-ris, continuous-phase)");
            chosen.insert(*parsed);
        }
        spec.variants.assign(chosen.begin(), chosen.end());
    }
    if (has("seed")) {
        const auto s = detail::parse_number<std::uint64_t>(entries.at("seed").value);
        if (!s)
            throw fail("seed", "expected an unsigned 64-bit integer");
        spec.seed = *s;
    }
    c.seed = spec.seed;
    if (has("output"))
        spec.output = entries.at("output").value;
    if (has("max_outer_iterations"))
        spec.optimizer.max_outer_iterations = get_count("max_outer_iterations", false);
    if (has("wsr_relative_tolerance")) {
        spec.optimizer.wsr_relative_tolerance = get_real("wsr_relative_tolerance");
        if (!(spec.optimizer.wsr_relative_tolerance > 0.0))
            throw fail("wsr_relative_tolerance", "must be positive");
    }
    if (has("parallelism"))
        spec.parallelism = get_count("parallelism", false);
    if (has("record_wall_time")) {
        const auto &v = entries.at("record_wall_time").value;
        if (v != "true" && v != "false")
            throw fail("record_wall_time", "expected true or false");
        spec.record_wall_time = v == "true";
    }

    try {
        validate(spec);
    } catch (const std::invalid_argument &e) {
        throw ParseError("config", 0, e.what());
    }
    return spec;
}

inline ExperimentSpec parse_config_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file `" + path + "`");
    return parse_config(in);
}

enum class CellStatus
{
    Converged,
    NotConverged,
    Failed,
};

inline std::string_view to_string(CellStatus s)
{
    switch (s) {
    case CellStatus::Converged: return "true";
    case CellStatus::NotConverged: return "false";
    case CellStatus::Failed: return "failed";
    }
    return "?";
}

struct SweepRecord
{
    double L_m = 0.0;
    Variant variant = Variant::IdealRis;
    std::uint64_t seed = 0;
    double wsr_bps_hz = 0.0;
    std::size_t iterations = 0;
    CellStatus status = CellStatus::Converged;
    double wall_s = 0.0;

    friend bool operator==(const SweepRecord &, const SweepRecord &) = default;
};

inline constexpr std::string_view kResultsHeader = "L_m,variant,seed,wsr_bps_hz,iterations,converged,wall_s";

namespace detail {

/// Shortest representation that parses back to the same double.
inline std::string format_real(double x)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

} // namespace detail

inline std::string format_record(const SweepRecord &r)
{
    std::string out = detail::format_real(r.L_m);
    out += ',';
    out += to_string(r.variant);
    out += ',' + std::to_string(r.seed);
    out += ',' + detail::format_real(r.wsr_bps_hz);
    out += ',' + std::to_string(r.iterations);
    out += ',';
    out += to_string(r.status);
    out += ',' + detail::format_real(r.wall_s);
    return out;
}

inline void write_results(std::ostream &out, const std::vector<SweepRecord> &records)
{
    out << kResultsHeader << '\n';
    for (const auto &r : records)
        out << format_record(r) << '\n';
}

/// Writes the results table; throws std::runtime_error if the path cannot
/// be written.
inline void emit_results(const std::vector<SweepRecord> &records, const std::string &path)
{
    if (records.empty())
        throw std::invalid_argument("emit_results: no records");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open `" + path + "` for writing");
    write_results(out, records);
    out.flush();
    if (!out)
        throw std::runtime_error("write to `" + path + "` failed");
}

inline std::vector<SweepRecord> read_results(std::istream &in)
{
    std::string line;
    if (!std::getline(in, line) || detail::trim(line) != kResultsHeader)
        throw std::runtime_error("results: missing or unexpected header");
    std::vector<SweepRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty())
            continue;
        const auto f = detail::split(line, ',');
        auto bad = [&]() { return std::runtime_error("results: malformed row at line " + std::to_string(line_no)); };
        if (f.size() != 7)
            throw bad();
        SweepRecord r;
        const auto L = detail::parse_number<double>(f[0]);
        const auto v = parse_variant(f[1]);
        const auto seed = detail::parse_number<std::uint64_t>(f[2]);
        const auto w = detail::parse_number<double>(f[3]);
        const auto it = detail::parse_number<std::size_t>(f[4]);
        const auto wall = detail::parse_number<double>(f[6]);
        if (!L || !v || !seed || !w || !it || !wall)
            throw bad();
        if (f[5] == "true")
            r.status = CellStatus::Converged;
        else if (f[5] == "false")
            r.status = CellStatus::NotConverged;
        else if (f[5] == "failed")
            r.status = CellStatus::Failed;
        else
            throw bad();
        r.L_m = *L;
        r.variant = *v;
        r.seed = *seed;
        r.wsr_bps_hz = *w;
        r.iterations = *it;
        r.wall_s = *wall;
        records.push_back(r);
    }
    return records;
}

/// One Monte-Carlo cell of the sweep.
struct Cell
{
    std::size_t L_index = 0;
    double L_m = 0.0;
    Variant variant = Variant::IdealRis;
    std::size_t trial = 0;
};

/// Cells in output order: L, then variant, then trial.
inline std::vector<Cell> enumerate_cells(const ExperimentSpec &spec)
{
    std::vector<Cell> cells;
    const auto pts = spec.sweep_points();
    for (std::size_t li = 0; li < pts.size(); ++li)
        for (Variant v : spec.variants)
            for (std::size_t t = 0; t < spec.trials; ++t)
                cells.push_back({li, pts[li], v, t});
    return cells;
}

/// The sweep cell at distance L, so a single run reproduces its seed.
inline Cell find_cell(const ExperimentSpec &spec, double L_m, Variant variant, std::size_t trial)
{
    const auto pts = spec.sweep_points();
    for (std::size_t li = 0; li < pts.size(); ++li)
        if (std::abs(pts[li] - L_m) <= 1e-9 * std::max(1.0, std::abs(L_m)))
            return Cell{li, pts[li], variant, trial};
    throw std::invalid_argument("distance " + detail::format_real(L_m) + " m is not a sweep point");
}

inline Rng cell_rng(const ExperimentSpec &spec, const Cell &cell)
{
    return Rng(spec.seed).split(Stream::Sweep, {cell.L_index, cell.trial});
}

/// Scenario, channels and optimizer options for one cell.
struct CellSetup
{
    ScenarioConfig config;
    ChannelSet channels;
    OptimizerOptions options;
    Rng rng{0};
};

inline CellSetup prepare_cell(const ExperimentSpec &spec, const Cell &cell)
{
    CellSetup s;
    s.config = spec.base;
    s.config.user_center = {cell.L_m, 0.0};
    if (cell.variant == Variant::NoRis)
        s.config = without_ris(s.config);
    s.rng = cell_rng(spec, cell);
    s.config.seed = s.rng.seed();
    const auto users = place_users(s.config, s.rng.split(Stream::UserPlacement));
    s.channels = generate_channels(s.config, users, s.rng);
    s.options = spec.optimizer;
    s.options.phase_mode = cell.variant == Variant::ContinuousPhase ? PhaseMode::UnitModulus : PhaseMode::Relaxed;
    return s;
}

inline SweepRecord run_cell(const ExperimentSpec &spec, const Cell &cell)
{
    const auto start = std::chrono::steady_clock::now();
    const CellSetup s = prepare_cell(spec, cell);
    SweepRecord rec;
    rec.L_m = cell.L_m;
    rec.variant = cell.variant;
    rec.seed = s.rng.seed();
    try {
        const OptimizationResult res = run(s.config, s.channels, s.options, s.rng);
        rec.wsr_bps_hz = res.final_wsr();
        rec.iterations = res.iterations;
        rec.status = res.converged ? CellStatus::Converged : CellStatus::NotConverged;
    } catch (const OptimizationFailure &e) {
        rec.wsr_bps_hz = e.partial().final_wsr();
        rec.iterations = e.partial().iterations;
        rec.status = CellStatus::Failed;
    }
    if (spec.record_wall_time)
        rec.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

/// Runs every cell, `parallelism` at a time, and streams rows to
/// spec.output in cell order as soon as each prefix of cells is complete.
/// `progress`, when set, receives one line per written row.
inline std::vector<SweepRecord> run_sweep(const ExperimentSpec &spec, std::ostream *progress = nullptr)
{
    validate(spec);
    const std::vector<Cell> cells = enumerate_cells(spec);

    std::ofstream out(spec.output, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open `" + spec.output + "` for writing");
    out << kResultsHeader << '\n' << std::flush;

    std::vector<std::optional<SweepRecord>> slots(cells.size());
    std::mutex mtx;
    std::condition_variable ready;
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            SweepRecord rec;
            try {
                rec = run_cell(spec, cells[i]);
            } catch (const std::exception &) {
                rec.L_m = cells[i].L_m;
                rec.variant = cells[i].variant;
                rec.seed = cell_rng(spec, cells[i]).seed();
                rec.status = CellStatus::Failed;
            }
            {
                std::lock_guard lock(mtx);
                slots[i] = std::move(rec);
            }
            ready.notify_one();
        }
    };

    std::vector<std::jthread> pool;
    const std::size_t workers = std::min(spec.parallelism, std::max<std::size_t>(cells.size(), 1));
    for (std::size_t t = 0; t < workers; ++t)
        pool.emplace_back(worker);

    std::vector<SweepRecord> records;
    records.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        std::unique_lock lock(mtx);
        ready.wait(lock, [&] { return slots[i].has_value(); });
        records.push_back(*slots[i]);
        lock.unlock();
        out << format_record(records.back()) << '\n' << std::flush;
        if (!out) {
            next = cells.size();
            throw std::runtime_error("write to `" + spec.output + "` failed");
        }
        if (progress)
            *progress << format_record(records.back()) << '\n' << std::flush;
    }
    return records;
}

struct SummaryRow
{
    double L_m = 0.0;
    Variant variant = Variant::IdealRis;
    std::size_t count = 0;
    std::size_t failed = 0;
    double mean_wsr = 0.0;
    double std_error = 0.0;
};

/// Mean and standard error of the WSR per (L, variant); failed cells are
/// counted but excluded from the statistics.
inline std::vector<SummaryRow> summarize(const std::vector<SweepRecord> &records)
{
    std::map<std::pair<double, int>, std::vector<double>> groups;
    std::map<std::pair<double, int>, std::size_t> failures;
    for (const auto &r : records) {
        const auto key = std::make_pair(r.L_m, static_cast<int>(r.variant));
        auto &g = groups[key];
        if (r.status == CellStatus::Failed)
            ++failures[key];
        else
            g.push_back(r.wsr_bps_hz);
    }
    std::vector<SummaryRow> rows;
    for (const auto &[key, vals] : groups) {
        SummaryRow row;
        row.L_m = key.first;
        row.variant = static_cast<Variant>(key.second);
        row.count = vals.size();
        row.failed = failures[key];
        if (!vals.empty()) {
            double sum = 0.0;
            for (double v : vals)
                sum += v;
            row.mean_wsr = sum / static_cast<double>(vals.size());
            if (vals.size() > 1) {
                double ss = 0.0;
                for (double v : vals)
                    ss += (v - row.mean_wsr) * (v - row.mean_wsr);
                row.std_error = std::sqrt(ss / static_cast<double>(vals.size() - 1) / static_cast<double>(vals.size()));
            }
        }
        rows.push_back(row);
    }
    return rows;
}

inline void print_summary(std::ostream &os, const std::vector<SummaryRow> &rows)
{
    os << "L_m      variant            trials  failed  mean_wsr      std_err\n";
    for (const auto &r : rows) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-8.2f %-18s %6zu  %6zu  %-12.6f  %.6f\n", r.L_m,
                      std::string(to_string(r.variant)).c_str(), r.count, r.failed, r.mean_wsr, r.std_error);
        os << buf;
    }
}

} // namespace ris_cf

#endif
