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

// irsmimo: run IRS beamforming sweeps and write CSV/JSON tables.
//
//   irsmimo sweep-power    --config configs/default.jsonc --out power.csv
//   irsmimo sweep-distance --trials 20 --pathloss product --format json
//   irsmimo convergence    --grid 48,64,80
//   irsmimo validate

#include "irsmimo/config.hpp"
#include "irsmimo/harness.hpp"
#include "irsmimo/validate.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace
{

struct CommonOptions
{
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::string methods;
    std::string out;
    std::string format = "csv";
    std::string pathloss;
    std::string grid;
    int threads = 1;
    std::optional<int> sweeps;
};

std::vector<std::string> split_list(const std::string &s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

std::vector<double> parse_grid(const std::string &s)
{
    std::vector<double> grid;
    for (const auto &item : split_list(s))
    {
        if (item == "inf")
            grid.push_back(irsmimo::kInfinity);
        else
            grid.push_back(std::stod(item));
    }
    return grid;
}

void add_common(CLI::App *cmd, CommonOptions &o, bool with_methods)
{
    cmd->add_option("--config", o.config_path, "Configuration file (JSON, // comments allowed)")->check(CLI::ExistingFile);
    cmd->add_option("--seed", o.seed, "Master seed (overrides config)");
    cmd->add_option("--trials", o.trials, "Monte-Carlo trials per grid point")->check(CLI::PositiveNumber);
    if (with_methods)
        cmd->add_option("--methods", o.methods,
                        "Comma-separated: sdr,iterative,sdr-quantized,iterative-quantized,random,no-irs");
    cmd->add_option("--out", o.out, "Output path (default: stdout)");
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--pathloss", o.pathloss, "Reflected-link path loss model")->check(CLI::IsMember({"sum", "product"}));
    cmd->add_option("--grid", o.grid, "Comma-separated grid values (overrides config; 'inf' allowed for bits)");
    cmd->add_option("--threads", o.threads, "Worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
}

irsmimo::ConfigFile resolve(const CommonOptions &o)
{
    irsmimo::ConfigFile cfg = o.config_path.empty() ? irsmimo::ConfigFile{} : irsmimo::load_config(o.config_path);
    auto &sc = cfg.experiment.scenario;
    if (o.seed)
        sc.seed = *o.seed;
    if (o.trials)
        cfg.sweep.trials = *o.trials;
    if (o.pathloss == "sum")
        sc.pathloss_mode = irsmimo::PathlossMode::distance_sum;
    else if (o.pathloss == "product")
        sc.pathloss_mode = irsmimo::PathlossMode::distance_product;
    if (!o.methods.empty())
    {
        cfg.sweep.methods.clear();
        for (const auto &name : split_list(o.methods))
        {
            const auto m = irsmimo::parse_method(name);
            if (!m)
                throw std::invalid_argument("unknown method '" + name + "'");
            cfg.sweep.methods.push_back(*m);
        }
    }
    if (o.sweeps)
        cfg.sweep.convergence_sweeps = *o.sweeps;
    sc.validate();
    return cfg;
}

void deliver(const CommonOptions &o, const std::string &contents)
{
    if (o.out.empty())
        std::cout << contents;
    else
        irsmimo::write_file(o.out, contents);
}

int run_sweep_command(irsmimo::SweepKind kind, const CommonOptions &o)
{
    const irsmimo::ConfigFile cfg = resolve(o);
    irsmimo::SweepSpec spec;
    spec.kind = kind;
    spec.base = cfg.experiment;
    spec.trials = cfg.sweep.trials;
    spec.methods = cfg.sweep.methods;
    spec.grid = o.grid.empty() ? cfg.sweep.grids.at(kind) : parse_grid(o.grid);
    const irsmimo::SweepTable table = irsmimo::run_sweep(spec, o.threads);
    deliver(o, o.format == "json" ? irsmimo::emit_json(table) : irsmimo::emit_csv(table));
    int errors = 0;
    for (const auto &row : table.rows)
        errors += row.errors;
    if (errors > 0)
        std::cerr << "warning: " << errors << " trial/method evaluations failed\n";
    return 0;
}

int run_convergence_command(const CommonOptions &o)
{
    const irsmimo::ConfigFile cfg = resolve(o);
    const std::vector<double> grid =
        o.grid.empty() ? cfg.sweep.grids.at(irsmimo::SweepKind::convergence) : parse_grid(o.grid);
    std::vector<int> elements;
    for (double v : grid)
    {
        if (!(v >= 1) || v != std::floor(v))
            throw std::invalid_argument("convergence grid values must be positive integers");
        elements.push_back(static_cast<int>(v));
    }
    const auto table = irsmimo::convergence_study(cfg.experiment, elements, cfg.sweep.convergence_sweeps,
                                                  cfg.sweep.trials, o.threads, cfg.experiment.solver.iterative_tol);
    deliver(o, o.format == "json" ? irsmimo::emit_json(table) : irsmimo::emit_csv(table));
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Passive (IRS) and active (SVD) beamforming sweeps for IRS-assisted MIMO links"};
    app.require_subcommand(1);

    CommonOptions opts;
    struct SweepCommand
    {
        const char *name;
        irsmimo::SweepKind kind;
        const char *help;
    };
    const SweepCommand sweeps[] = {
        {"sweep-power", irsmimo::SweepKind::power, "Spectrum efficiency versus transmit power (dBm)"},
        {"sweep-elements", irsmimo::SweepKind::elements, "Spectrum efficiency versus number of IRS elements"},
        {"sweep-distance", irsmimo::SweepKind::distance, "Spectrum efficiency versus IRS x-coordinate (m)"},
        {"sweep-bits", irsmimo::SweepKind::bits, "Spectrum efficiency versus phase resolution (bits)"},
    };
    std::vector<std::pair<CLI::App *, irsmimo::SweepKind>> sweep_cmds;
    for (const auto &s : sweeps)
    {
        CLI::App *cmd = app.add_subcommand(s.name, s.help);
        add_common(cmd, opts, true);
        sweep_cmds.emplace_back(cmd, s.kind);
    }

    CLI::App *conv = app.add_subcommand("convergence", "Objective trace of the iterative solver per sweep");
    add_common(conv, opts, false);
    conv->add_option("--sweeps", opts.sweeps, "Number of sweeps to trace")->check(CLI::PositiveNumber);

    std::uint64_t validate_seed = 7;
    int validate_instances = 20;
    CLI::App *val = app.add_subcommand("validate", "Check algebraic invariants on small random instances");
    val->add_option("--seed", validate_seed, "Seed for the random instances");
    val->add_option("--instances", validate_instances, "Instances per check")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try
    {
        for (const auto &[cmd, kind] : sweep_cmds)
            if (cmd->parsed())
                return run_sweep_command(kind, opts);
        if (conv->parsed())
            return run_convergence_command(opts);
        if (val->parsed())
        {
            bool ok = true;
            for (const auto &r : irsmimo::run_validation(validate_seed, validate_instances))
            {
                std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << '\n';
                ok = ok && r.passed;
            }
            return ok ? 0 : 1;
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
