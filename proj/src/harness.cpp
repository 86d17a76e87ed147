// SPDX-License-Identifier: Apache-2.0
//
// irsmimo: passive and active beamforming for IRS-assisted MIMO links
// Copyright (C) 2026 The irsmimo Authors
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

#include "irsmimo/harness.hpp"
#include "irsmimo/config.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace irsmimo
{

namespace
{

constexpr std::array<std::pair<SweepKind, std::string_view>, 5> kSweepNames{{
    {SweepKind::power, "power"},
    {SweepKind::elements, "elements"},
    {SweepKind::distance, "distance"},
    {SweepKind::bits, "bits"},
    {SweepKind::convergence, "convergence"},
}};

// Runs body(job) for job in [0, jobs) on `threads` workers. Each job writes to
// its own slot, so the result is independent of scheduling.
void parallel_for(std::size_t jobs, int threads, const std::function<void(std::size_t)> &body)
{
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), jobs);
    if (workers <= 1)
    {
        for (std::size_t j = 0; j < jobs; ++j)
            body(j);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
    {
        pool.emplace_back([&] {
            for (std::size_t j = next++; j < jobs; j = next++)
            {
                try
                {
                    body(j);
                }
                catch (...)
                {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            }
        });
    }
    for (auto &t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

PhaseVector initial_phases(const ExperimentConfig &cfg, std::uint64_t trial_index)
{
    const int m = cfg.scenario.num_irs();
    if (cfg.solver.init == PhaseInit::zeros)
        return PhaseVector::zeros(m);
    RandomStream rng(cfg.scenario.seed, trial_index, StreamTag::phase_init);
    return random_phases(m, rng);
}

struct Moments
{
    double mean = 0.0;
    double std = 0.0;
};

Moments moments(const std::vector<double> &xs)
{
    Moments out;
    if (xs.empty())
        return out;
    for (double x : xs)
        out.mean += x;
    out.mean /= static_cast<double>(xs.size());
    if (xs.size() > 1)
    {
        double ss = 0.0;
        for (double x : xs)
            ss += (x - out.mean) * (x - out.mean);
        out.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
    return out;
}

} // namespace

std::string_view to_string(SweepKind k) noexcept
{
    for (const auto &[kind, name] : kSweepNames)
        if (kind == k)
            return name;
    return "unknown";
}

std::optional<SweepKind> parse_sweep_kind(std::string_view name) noexcept
{
    for (const auto &[kind, n] : kSweepNames)
        if (n == name)
            return kind;
    return std::nullopt;
}

void SweepSpec::validate() const
{
    if (grid.empty())
        throw std::invalid_argument("SweepSpec: grid must not be empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("SweepSpec: grid must be strictly increasing");
    if (trials < 1)
        throw std::invalid_argument("SweepSpec: trials must be >= 1");
    for (double v : grid)
        apply_sweep_value(base, kind, v).scenario.validate();
}

double snr_factor(const ScenarioConfig &cfg)
{
    return dbm_to_mw(cfg.transmit_power_dbm) /
           (cfg.num_streams * noise_power_mw(cfg.noise_psd_dbm_hz, cfg.bandwidth_hz));
}

std::vector<TrialRecord> run_trial(const ExperimentConfig &cfg, const std::vector<Method> &methods,
                                   std::uint64_t trial_index, double sweep_value)
{
    const ScenarioConfig &sc = cfg.scenario;
    sc.validate();
    const ChannelSet channels = draw_channel_set(sc, trial_index);
    const std::uint64_t fingerprint = channels.fingerprint();

    const double power = dbm_to_mw(sc.transmit_power_dbm);
    const double noise = noise_power_mw(sc.noise_psd_dbm_hz, sc.bandwidth_hz);

    // R is built from SNR-normalized channels so objectives are O(1) numbers;
    // the maximizing phases are unaffected by the scaling.
    const double amplitude = std::sqrt(snr_factor(sc));
    ChannelSet normalized = channels;
    normalized.direct *= amplitude;
    normalized.ap_irs *= amplitude;
    const QcqpData qcqp = make_qcqp(normalized);

    std::optional<SolverReport> sdr_cache;
    const auto sdr = [&]() -> const SolverReport & {
        if (!sdr_cache)
        {
            RandomStream rng(sc.seed, trial_index, StreamTag::randomization);
            SdrOptions opts = cfg.solver.sdr;
            opts.sdp.seed = derive_seed(sc.seed, trial_index, StreamTag::sdp_init);
            sdr_cache = sdr_solve(qcqp.r, rng, opts);
        }
        return *sdr_cache;
    };

    std::vector<TrialRecord> records;
    records.reserve(methods.size());
    for (Method method : methods)
    {
        TrialRecord rec;
        rec.trial_index = trial_index;
        rec.sweep_value = sweep_value;
        rec.method = method;
        rec.channel_fingerprint = fingerprint;
        const auto start = std::chrono::steady_clock::now();
        try
        {
            EffectiveChannel h_eff;
            switch (method)
            {
            case Method::no_irs:
                h_eff = no_irs_baseline(channels);
                break;
            case Method::random: {
                RandomStream rng(sc.seed, trial_index, StreamTag::random_phases);
                const PhaseVector theta = random_phases(sc.num_irs(), rng);
                rec.qcqp_objective = qcqp_objective(qcqp, theta);
                h_eff = effective_channel(channels, theta);
                break;
            }
            case Method::iterative:
            case Method::iterative_quantized: {
                IterativeOptions opts;
                opts.max_sweeps = cfg.solver.iterative_sweeps;
                opts.tol = cfg.solver.iterative_tol;
                if (method == Method::iterative_quantized)
                    opts.bits = sc.quantization_bits;
                const SolverReport rep = iterative_solve(qcqp.r, initial_phases(cfg, trial_index), opts);
                rec.qcqp_objective = rep.final_objective;
                rec.sweeps_used = rep.sweeps_used;
                h_eff = effective_channel(channels, rep.theta);
                break;
            }
            case Method::sdr:
            case Method::sdr_quantized: {
                const SolverReport &rep = sdr();
                PhaseVector theta = rep.theta;
                if (method == Method::sdr_quantized && sc.quantization_bits)
                    theta = quantize_phases(theta, *sc.quantization_bits);
                rec.qcqp_objective = qcqp_objective(qcqp, theta);
                rec.sweeps_used = rep.sweeps_used;
                h_eff = effective_channel(channels, theta);
                break;
            }
            }
            const ActiveBeamformer w = active_beamformer(h_eff, sc.num_streams);
            rec.spectrum_efficiency = spectrum_efficiency(h_eff, w, power, noise, sc.num_streams);
        }
        catch (const std::exception &e)
        {
            rec.error = e.what();
            rec.spectrum_efficiency = 0.0;
        }
        rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        records.push_back(std::move(rec));
    }
    return records;
}

ExperimentConfig apply_sweep_value(const ExperimentConfig &base, SweepKind kind, double value)
{
    ExperimentConfig cfg = base;
    ScenarioConfig &sc = cfg.scenario;
    switch (kind)
    {
    case SweepKind::power:
        sc.transmit_power_dbm = value;
        break;
    case SweepKind::elements:
    case SweepKind::convergence:
        if (!(value >= 1.0) || value != std::floor(value))
            throw std::invalid_argument("elements sweep: grid values must be positive integers");
        sc.irs_geometry = UpaGeometry::factorize(static_cast<int>(value), sc.irs_geometry.spacing_over_wavelength);
        break;
    case SweepKind::distance:
        sc.irs_position.x = value;
        break;
    case SweepKind::bits:
        if (std::isinf(value) && value > 0)
            sc.quantization_bits = std::nullopt;
        else if (value >= 1.0 && value == std::floor(value))
            sc.quantization_bits = static_cast<int>(value);
        else
            throw std::invalid_argument("bits sweep: grid values must be positive integers or inf");
        break;
    }
    return cfg;
}

std::vector<SweepRow> aggregate(const SweepSpec &spec, const std::vector<TrialRecord> &records)
{
    std::vector<SweepRow> rows;
    for (double value : spec.grid)
    {
        for (Method method : spec.methods)
        {
            std::vector<double> se, obj, sweeps;
            int errors = 0;
            for (const TrialRecord &rec : records)
            {
                if (rec.sweep_value != value || rec.method != method)
                    continue;
                if (!rec.error.empty())
                {
                    ++errors;
                    continue;
                }
                se.push_back(rec.spectrum_efficiency);
                obj.push_back(rec.qcqp_objective);
                sweeps.push_back(rec.sweeps_used);
            }
            SweepRow row;
            row.sweep_value = value;
            row.method = method;
            row.trials = static_cast<int>(se.size());
            const Moments m = moments(se);
            row.mean_se = m.mean;
            row.std_se = m.std;
            row.mean_qcqp_objective = moments(obj).mean;
            row.mean_sweeps_used = moments(sweeps).mean;
            row.errors = errors;
            rows.push_back(row);
        }
    }
    return rows;
}

SweepTable run_sweep(const SweepSpec &spec, int threads)
{
    spec.validate();
    if (spec.kind == SweepKind::convergence)
        throw std::invalid_argument("run_sweep: use convergence_study for convergence sweeps");

    std::vector<ExperimentConfig> configs;
    configs.reserve(spec.grid.size());
    for (double v : spec.grid)
        configs.push_back(apply_sweep_value(spec.base, spec.kind, v));

    const std::size_t trials = static_cast<std::size_t>(spec.trials);
    const std::size_t jobs = configs.size() * trials;
    std::vector<std::vector<TrialRecord>> results(jobs);
    if (!spec.methods.empty())
    {
        parallel_for(jobs, threads, [&](std::size_t job) {
            const std::size_t g = job / trials;
            const std::size_t t = job % trials;
            results[job] = run_trial(configs[g], spec.methods, t, spec.grid[g]);
        });
    }

    SweepTable table;
    table.spec = spec;
    for (auto &r : results)
        for (auto &rec : r)
            table.records.push_back(std::move(rec));
    table.rows = aggregate(spec, table.records);
    return table;
}

ConvergenceTable convergence_study(const ExperimentConfig &base, const std::vector<int> &elements, int max_sweeps,
                                   int trials, int threads, double tol)
{
    if (elements.empty() || trials < 1 || max_sweeps < 1)
        throw std::invalid_argument("convergence_study: need elements, trials >= 1 and max_sweeps >= 1");

    ConvergenceTable table;
    table.base = base;
    table.tol = tol;
    const std::size_t n_e = elements.size();
    const std::size_t n_t = static_cast<std::size_t>(trials);
    table.traces.assign(n_e, std::vector<std::vector<double>>(n_t));
    table.sweeps_to_converge.assign(n_e, std::vector<int>(n_t, max_sweeps + 1));
    table.upper_bounds.assign(n_e, std::vector<double>(n_t, 0.0));
    std::vector<std::vector<std::vector<double>>> se(n_e, std::vector<std::vector<double>>(n_t));

    std::vector<ExperimentConfig> configs;
    for (int m : elements)
        configs.push_back(apply_sweep_value(base, SweepKind::convergence, m));

    parallel_for(n_e * n_t, threads, [&](std::size_t job) {
        const std::size_t e = job / n_t;
        const std::size_t t = job % n_t;
        const ExperimentConfig &cfg = configs[e];
        const ScenarioConfig &sc = cfg.scenario;
        sc.validate();

        const ChannelSet channels = draw_channel_set(sc, t);
        const double amplitude = std::sqrt(snr_factor(sc));
        ChannelSet normalized = channels;
        normalized.direct *= amplitude;
        normalized.ap_irs *= amplitude;
        const QcqpData qcqp = make_qcqp(normalized);

        const double power = dbm_to_mw(sc.transmit_power_dbm);
        const double noise = noise_power_mw(sc.noise_psd_dbm_hz, sc.bandwidth_hz);
        const auto se_of = [&](const PhaseVector &theta) {
            const EffectiveChannel h = effective_channel(channels, theta);
            return spectrum_efficiency(h, active_beamformer(h, sc.num_streams), power, noise, sc.num_streams);
        };

        // One sweep at a time so the SE of every intermediate point is available.
        PhaseVector theta = initial_phases(cfg, t);
        std::vector<double> trace{homogenized_objective(qcqp.r, theta.homogenized())};
        std::vector<double> se_trace{se_of(theta)};
        IterativeOptions one;
        one.max_sweeps = 1;
        one.early_exit = false;
        for (int k = 1; k <= max_sweeps; ++k)
        {
            SolverReport rep = iterative_solve(qcqp.r, theta, one);
            theta = std::move(rep.theta);
            trace.push_back(rep.final_objective);
            se_trace.push_back(se_of(theta));
        }
        for (int k = 0; k < max_sweeps; ++k)
        {
            const double change = std::abs(trace[k + 1] - trace[k]) / std::max(std::abs(trace[k]), 1e-300);
            if (change < tol)
            {
                table.sweeps_to_converge[e][t] = k;
                break;
            }
        }
        table.upper_bounds[e][t] = sdp_upper_bound(qcqp.r);
        table.traces[e][t] = std::move(trace);
        se[e][t] = std::move(se_trace);
    });

    for (std::size_t e = 0; e < n_e; ++e)
    {
        for (int k = 0; k <= max_sweeps; ++k)
        {
            std::vector<double> obj, rate;
            for (std::size_t t = 0; t < n_t; ++t)
            {
                obj.push_back(table.traces[e][t][static_cast<std::size_t>(k)]);
                rate.push_back(se[e][t][static_cast<std::size_t>(k)]);
            }
            ConvergenceRow row;
            row.elements = elements[e];
            row.sweep_index = k;
            row.trials = trials;
            const Moments m = moments(obj);
            row.mean_objective = m.mean;
            row.std_objective = m.std;
            row.mean_se = moments(rate).mean;
            table.rows.push_back(row);
        }
    }
    return table;
}

std::string format_number(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    if (std::isnan(v))
        return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

namespace
{

nlohmann::json json_number(double v)
{
    if (std::isfinite(v))
        return v;
    return format_number(v);
}

} // namespace

std::string emit_csv(const SweepTable &table)
{
    std::ostringstream out;
    out << "sweep_kind,sweep_value,method,trials,mean_se_bps_hz,std_se_bps_hz,mean_qcqp_objective,mean_sweeps_used\n";
    for (const SweepRow &row : table.rows)
    {
        out << to_string(table.spec.kind) << ',' << format_number(row.sweep_value) << ',' << to_string(row.method)
            << ',' << row.trials << ',' << format_number(row.mean_se) << ',' << format_number(row.std_se) << ','
            << format_number(row.mean_qcqp_objective) << ',' << format_number(row.mean_sweeps_used) << '\n';
    }
    return out.str();
}

std::string emit_json(const SweepTable &table)
{
    nlohmann::json doc;
    doc["sweep_kind"] = to_string(table.spec.kind);
    doc["trials"] = table.spec.trials;
    nlohmann::json grid = nlohmann::json::array();
    for (double v : table.spec.grid)
        grid.push_back(json_number(v));
    doc["grid"] = grid;
    nlohmann::json methods = nlohmann::json::array();
    for (Method m : table.spec.methods)
        methods.push_back(to_string(m));
    doc["methods"] = methods;
    doc["config"] = to_json(table.spec.base);
    nlohmann::json rows = nlohmann::json::array();
    for (const SweepRow &row : table.rows)
    {
        rows.push_back({
            {"sweep_kind", to_string(table.spec.kind)},
            {"sweep_value", json_number(row.sweep_value)},
            {"method", to_string(row.method)},
            {"trials", row.trials},
            {"mean_se_bps_hz", std::stod(format_number(row.mean_se))},
            {"std_se_bps_hz", std::stod(format_number(row.std_se))},
            {"mean_qcqp_objective", std::stod(format_number(row.mean_qcqp_objective))},
            {"mean_sweeps_used", std::stod(format_number(row.mean_sweeps_used))},
            {"errors", row.errors},
        });
    }
    doc["rows"] = rows;
    return doc.dump(2) + "\n";
}

std::string emit_csv(const ConvergenceTable &table)
{
    std::ostringstream out;
    out << "sweep_kind,sweep_index,elements,trials,mean_qcqp_objective,std_qcqp_objective,mean_se_bps_hz\n";
    for (const ConvergenceRow &row : table.rows)
    {
        out << "convergence," << row.sweep_index << ',' << row.elements << ',' << row.trials << ','
            << format_number(row.mean_objective) << ',' << format_number(row.std_objective) << ','
            << format_number(row.mean_se) << '\n';
    }
    return out.str();
}

std::string emit_json(const ConvergenceTable &table)
{
    nlohmann::json doc;
    doc["sweep_kind"] = "convergence";
    doc["tol"] = table.tol;
    doc["config"] = to_json(table.base);
    nlohmann::json rows = nlohmann::json::array();
    for (const ConvergenceRow &row : table.rows)
    {
        rows.push_back({
            {"sweep_kind", "convergence"},
            {"sweep_index", row.sweep_index},
            {"elements", row.elements},
            {"trials", row.trials},
            {"mean_qcqp_objective", std::stod(format_number(row.mean_objective))},
            {"std_qcqp_objective", std::stod(format_number(row.std_objective))},
            {"mean_se_bps_hz", std::stod(format_number(row.mean_se))},
        });
    }
    doc["rows"] = rows;
    nlohmann::json sweeps = nlohmann::json::array();
    for (const auto &per_m : table.sweeps_to_converge)
        sweeps.push_back(per_m);
    doc["sweeps_to_converge"] = sweeps;
    return doc.dump(2) + "\n";
}

void write_file(const std::string &path, const std::string &contents)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    f << contents;
    f.flush();
    if (!f)
        throw std::runtime_error("write to '" + path + "' failed");
}

ParsedSweepCsv parse_sweep_csv(const std::string &csv)
{
    ParsedSweepCsv out;
    std::istringstream in(csv);
    std::string line;
    const auto split = [](const std::string &s) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ss(s);
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        return cells;
    };
    if (!std::getline(in, line))
        throw std::invalid_argument("parse_sweep_csv: empty input");
    out.header = split(line);
    if (out.header.size() != 8)
        throw std::invalid_argument("parse_sweep_csv: unexpected header");
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        const auto cells = split(line);
        if (cells.size() != 8)
            throw std::invalid_argument("parse_sweep_csv: malformed row: " + line);
        const auto method = parse_method(cells[2]);
        if (!method)
            throw std::invalid_argument("parse_sweep_csv: unknown method " + cells[2]);
        SweepRow row;
        row.sweep_value = std::stod(cells[1]);
        row.method = *method;
        row.trials = std::stoi(cells[3]);
        row.mean_se = std::stod(cells[4]);
        row.std_se = std::stod(cells[5]);
        row.mean_qcqp_objective = std::stod(cells[6]);
        row.mean_sweeps_used = std::stod(cells[7]);
        out.kinds.push_back(cells[0]);
        out.rows.push_back(row);
    }
    return out;
}

} // namespace irsmimo
