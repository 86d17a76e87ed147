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

#include "irsmimo/sdp.hpp"
#include "irsmimo/random.hpp"

#include <Eigen/Eigenvalues>

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace irsmimo
{

int default_factor_rank(int n)
{
    return static_cast<int>(std::ceil(std::sqrt(2.0 * n))) + 1;
}

namespace
{

double trace_rv(const CMatrix &r, const CMatrix &y)
{
    // tr(R Y Y^H) = sum_i y_i^H (R Y)_i over rows.
    return (y.adjoint() * r * y).trace().real();
}

} // namespace

SdpSolution solve_diag_sdp(const CMatrix &r, const SdpOptions &opts)
{
    if (r.rows() != r.cols())
        throw std::invalid_argument("solve_diag_sdp: R must be square");
    const Eigen::Index n = r.rows();
    SdpSolution out;
    if (n == 0)
    {
        out.converged = true;
        return out;
    }

    const double scale = r.cwiseAbs().maxCoeff();
    if (scale == 0.0)
    {
        out.v = CMatrix::Identity(n, n);
        out.factor.y = CMatrix::Identity(n, n);
        out.converged = true;
        return out;
    }

    const int k = opts.rank > 0 ? opts.rank : default_factor_rank(static_cast<int>(n));
    RandomStream rng(opts.seed);
    CMatrix y = rng.cscg_matrix(n, k);
    for (Eigen::Index i = 0; i < n; ++i)
        y.row(i).normalize();

    // Gradients below this magnitude are treated as zero: any unit row is then
    // stationary, and keeping the current one preserves monotonicity.
    const double zero_gradient = 1e-14 * scale * static_cast<double>(n);

    double objective = trace_rv(r, y);
    out.min_row_gain = 0.0;
    bool first_gain = true;

    for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep)
    {
        for (Eigen::Index i = 0; i < n; ++i)
        {
            Eigen::RowVectorXcd g = r.row(i) * y - r(i, i) * y.row(i);
            const double norm = g.norm();
            if (norm <= zero_gradient)
                continue;
            // Row i contributes 2 Re(<g, y_i>) off the diagonal; the update moves
            // it to 2 |g|.
            const double before = 2.0 * y.row(i).dot(g).real();
            y.row(i) = g / norm;
            const double gain = 2.0 * norm - before;
            if (first_gain || gain < out.min_row_gain)
            {
                out.min_row_gain = gain;
                first_gain = false;
            }
            assert(gain >= -1e-9 * scale * static_cast<double>(n));
        }
        const double next = trace_rv(r, y);
        const double change = std::abs(next - objective) / std::max(std::abs(next), 1e-300);
        objective = next;
        out.iterations = sweep;
        if (change < opts.tol)
        {
            out.converged = true;
            break;
        }
    }

    out.factor.y = y;
    out.v = y * y.adjoint();
    for (Eigen::Index i = 0; i < n; ++i)
        out.v(i, i) = 1.0;
    out.objective = objective;
    return out;
}

double sdp_upper_bound(const CMatrix &r)
{
    if (r.rows() == 0)
        return 0.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(r, Eigen::EigenvaluesOnly);
    return static_cast<double>(r.rows()) * eig.eigenvalues().maxCoeff();
}

} // namespace irsmimo
