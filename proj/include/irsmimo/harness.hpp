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

// Monte-Carlo experiment orchestration. A trial derives its random substreams
// from (seed, trial_index) only, so every grid point of a sweep sees the same
// fading draws and every method in a trial sees the same ChannelSet.

#pragma once

#include "irsmimo/geometry.hpp"
#include "irsmimo/passive.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace irsmimo
{

enum class PhaseInit
{
    zeros,
    random,
};

struct SolverSettings
{
    int iterative_sweeps = 5;
    double iterative_tol = 1e-4;
    PhaseInit init = PhaseInit::zeros;
    SdrOptions sdr;
};

struct ExperimentConfig
{
    ScenarioConfig scenario;
    SolverSettings solver;
};

enum class SweepKind
{
    power,
    elements,
    distance,
    bits,
    convergence,
};

std::string_view to_string(SweepKind k) noexcept;
std::optional<SweepKind> parse_sweep_kind(std::string_view name) noexcept;

struct SweepSpec
{
    SweepKind kind = SweepKind::power;
    std::vector<double> grid; // bits sweeps may contain +inf (continuous)
    int trials = 100;
    ExperimentConfig base;
    std::vector<Method> methods;

    void validate() const;
};

struct TrialRecord
{
    std::uint64_t trial_index = 0;
    double sweep_value = 0.0;
    Method method = Method::iterative;
    double spectrum_efficiency = 0.0; // bits/s/Hz
    double qcqp_objective = 0.0;      // x^H R x in SNR-normalized units
    int sweeps_used = 0;
    double wall_time = 0.0;           // seconds; excluded from emitted tables
    std::uint64_t channel_fingerprint = 0;
    std::string error;                // empty on success
};

struct SweepRow
{
    double sweep_value = 0.0;
    Method method = Method::iterative;
    int trials = 0;
    double mean_se = 0.0;
    double std_se = 0.0;
    double mean_qcqp_objective = 0.0;
    double mean_sweeps_used = 0.0;
    int errors = 0;
};

struct SweepTable
{
    SweepSpec spec;
    std::vector<SweepRow> rows;        // grid-major, methods in SweepSpec order
    std::vector<TrialRecord> records;  // ordered by (grid, trial, method)
};

/// Linear SNR factor rho / (Ns sigma^2) for the scenario.
double snr_factor(const ScenarioConfig &cfg);

/// One paired trial: channels drawn once, every method evaluated on them.
std::vector<TrialRecord> run_trial(const ExperimentConfig &cfg, const std::vector<Method> &methods,
                                   std::uint64_t trial_index, double sweep_value = 0.0);

/// Scenario for grid value `value` of a sweep of kind `kind`.
ExperimentConfig apply_sweep_value(const ExperimentConfig &base, SweepKind kind, double value);

/// Runs grid x trials with `threads` workers; results do not depend on `threads`.
SweepTable run_sweep(const SweepSpec &spec, int threads = 1);

/// Recomputes the aggregated rows from records (trial-index order).
std::vector<SweepRow> aggregate(const SweepSpec &spec, const std::vector<TrialRecord> &records);

struct ConvergenceRow
{
    int elements = 0;
    int sweep_index = 0; // 0 = initial point
    int trials = 0;
    double mean_objective = 0.0;
    double std_objective = 0.0;
    double mean_se = 0.0;
};

struct ConvergenceTable
{
    std::vector<ConvergenceRow> rows;
    /// traces[e][t] = objective after sweeps 0..K_max for elements index e, trial t.
    std::vector<std::vector<std::vector<double>>> traces;
    /// Per (elements, trial): sweeps needed to reach the plateau, i.e. the first
    /// k whose next sweep improves the objective by less than tol |f_k|.
    /// K_max + 1 when no such k < K_max exists.
    std::vector<std::vector<int>> sweeps_to_converge;
    std::vector<std::vector<double>> upper_bounds;
    ExperimentConfig base;
    double tol = 1e-4;
};

ConvergenceTable convergence_study(const ExperimentConfig &base, const std::vector<int> &elements, int max_sweeps,
                                   int trials, int threads = 1, double tol = 1e-4);

enum class OutputFormat
{
    csv,
    json,
};

/// Header: sweep_kind,sweep_value,method,trials,mean_se_bps_hz,std_se_bps_hz,
/// mean_qcqp_objective,mean_sweeps_used. Numbers use 9 significant digits.
std::string emit_csv(const SweepTable &table);
std::string emit_json(const SweepTable &table);
std::string emit_csv(const ConvergenceTable &table);
std::string emit_json(const ConvergenceTable &table);

/// Writes `contents` to `path`; throws std::runtime_error on I/O failure.
void write_file(const std::string &path, const std::string &contents);

/// Parses emit_csv output back into (sweep_kind, rows).
struct ParsedSweepCsv
{
    std::vector<std::string> header;
    std::vector<std::string> kinds;
    std::vector<SweepRow> rows;
};
ParsedSweepCsv parse_sweep_csv(const std::string &csv);

/// Formats with 9 significant digits; infinities as "inf" / "-inf".
std::string format_number(double v);

} // namespace irsmimo
