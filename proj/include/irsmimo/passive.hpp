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

// IRS phase design: SDR with Gaussian randomization, element-wise iterative
// ascent, the two discrete-phase procedures, and the random / no-IRS baselines.
// All solvers work on the homogenized matrix R from build_r and evaluate
// x^H R x with x = [theta_v; 1].

#pragma once

#include "irsmimo/effective_channel.hpp"
#include "irsmimo/qcqp.hpp"
#include "irsmimo/random.hpp"
#include "irsmimo/sdp.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace irsmimo
{

enum class Method
{
    sdr,
    iterative,
    sdr_quantized,
    iterative_quantized,
    random,
    no_irs,
};

std::string_view to_string(Method m) noexcept;
/// Accepts the hyphenated names ("sdr-quantized", "no-irs", ...).
std::optional<Method> parse_method(std::string_view name) noexcept;
const std::vector<Method> &all_methods();

struct SolverReport
{
    Method method = Method::iterative;
    PhaseVector theta;
    std::vector<double> objective_trace; // x^H R x after each sweep
    double initial_objective = 0.0;
    double final_objective = 0.0;
    double upper_bound = 0.0;
    int sweeps_used = 0;
    std::uint64_t multiply_adds = 0;  // complex MACs spent on phase updates
    double min_update_gain = 0.0;     // smallest single-update objective change
    double sdp_objective = 0.0;       // relaxation value (SDR methods only)
    bool degenerate_reference = false; // homogenizing coordinate vanished
};

/// Phase maximizing x^H R x over coordinate m with the others fixed:
/// -arg(sum_{i != m} conj(x_i) R[i,m]). Returns arg(x_m) when that sum is
/// numerically zero. `x` is homogenized (length M+1, last entry 1).
double element_update(const CMatrix &r, const CVector &x, int m);

struct IterativeOptions
{
    int max_sweeps = 5;
    double tol = 1e-4;       // relative sweep-to-sweep change for early exit
    bool early_exit = true;
    std::optional<int> bits; // commit Q(theta*) when set
};

SolverReport iterative_solve(const CMatrix &r, const PhaseVector &theta_init, const IterativeOptions &opts = {});

SolverReport iterative_quantized_solve(const CMatrix &r, int max_sweeps, std::optional<int> bits,
                                       const PhaseVector &theta_init, double tol = 1e-4);

struct ExtractedPhases
{
    PhaseVector theta;
    bool degenerate_reference = false;
};

/// theta_v = exp(j arg(x[0:M] / x[M])). If |x[M]| is below 1e-14 (relative to
/// max |x|) the reference phase is taken as 0 and the result flagged.
ExtractedPhases extract_phases(const CVector &x);

struct RandomizationResult
{
    CVector candidate;                     // best raw U S^{1/2} r
    double objective = 0.0;                // score of its extracted phases
    std::vector<double> candidate_objectives;
};

/// Draws num_candidates vectors U S^{1/2} r, r ~ CN(0, I), from the
/// eigendecomposition of V and keeps the one whose extracted phases score best.
/// Eigenvalues below -1e-8 lambda_max mean V is not PSD and throw.
RandomizationResult gaussian_randomization(const CMatrix &r, const CMatrix &v, RandomStream &rng, int num_candidates);

struct SdrOptions
{
    SdpOptions sdp;
    int num_candidates = 1000;
};

SolverReport sdr_solve(const CMatrix &r, RandomStream &rng, const SdrOptions &opts = {});

/// The 2^B phases {-pi + 2 pi k / 2^B : k = 1..2^B}, ascending.
RVector discrete_phase_set(int bits);

/// Nearest point of the B-bit set under circular distance; ties go to the
/// smaller representative angle in (-pi, pi].
double quantize_phase(double phase, int bits);
PhaseVector quantize_phases(const PhaseVector &theta, int bits);

/// Wrap to (-pi, pi].
double wrap_phase(double phase);

PhaseVector random_phases(int m, RandomStream &rng);

EffectiveChannel no_irs_baseline(const ChannelSet &channels);

} // namespace irsmimo
