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

// Unit-diagonal complex SDP
//
//   max tr(R V)   s.t.  V_ii = 1,  V >= 0
//
// solved over the factorization V = Y Y^H with unit-norm rows of Y. Each row
// update y_i <- normalize(sum_{j != i} R_ij y_j) maximizes tr(R V) exactly over
// that row, so the objective never decreases and every iterate is feasible.

#pragma once

#include "irsmimo/types.hpp"

#include <cstdint>

namespace irsmimo
{

struct SdpOptions
{
    int rank = 0;          // 0 selects ceil(sqrt(2 n)) + 1
    int max_sweeps = 500;
    double tol = 1e-6;     // relative objective change between sweeps
    std::uint64_t seed = 0;
};

/// Row-normalized factor; V = Y Y^H.
struct LowRankFactor
{
    CMatrix y;

    CMatrix gram() const { return y * y.adjoint(); }
};

struct SdpSolution
{
    CMatrix v;
    LowRankFactor factor;
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
    /// Smallest objective increment observed over single row updates. Never
    /// below -(rounding) when the solver behaves.
    double min_row_gain = 0.0;
};

int default_factor_rank(int n);

SdpSolution solve_diag_sdp(const CMatrix &r, const SdpOptions &opts = {});

/// (M+1) * lambda_max(R), an upper bound on every unit-modulus x^H R x.
double sdp_upper_bound(const CMatrix &r);

} // namespace irsmimo
