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

// Reduction of max ||H_r^H diag(theta) G + H_d^H||_F^2 to the unit-modulus QCQP
//
//   max  theta^H Gc^H Gc theta + 2 Re(theta^H Gc^H h_v)   s.t. |theta_m| = 1
//
// and its homogenized form  max  x^H R x,  x = [theta; t],  |x_i| = 1, with
//
//   R = [ Gc^H Gc    Gc^H h_v ]
//       [ h_v^H Gc   0        ]
//
// Gc is the column selection of (G^T kron H_r^H) at the diagonal positions of
// vec(diag(theta)); h_v = vec(H_d^H). All indices are 0-based.

#pragma once

#include "irsmimo/geometry.hpp"
#include "irsmimo/types.hpp"

#include <optional>
#include <vector>

namespace irsmimo
{

/// M unit-modulus IRS coefficients, stored as phases (radians) plus the
/// corresponding exp(j*phase). Optionally tagged with a discrete resolution.
class PhaseVector
{
  public:
    PhaseVector() = default;

    static PhaseVector from_phases(RVector phases, std::optional<int> bits = std::nullopt);
    /// Phases are taken from arg(c); magnitudes are discarded.
    static PhaseVector from_coefficients(const CVector &c);
    static PhaseVector zeros(int m) { return from_phases(RVector::Zero(m)); }

    const RVector &phases() const noexcept { return phases_; }
    const CVector &coefficients() const noexcept { return coefficients_; }
    std::optional<int> bits() const noexcept { return bits_; }
    int size() const noexcept { return static_cast<int>(phases_.size()); }

    /// [theta_v; 1]
    CVector homogenized() const;

  private:
    RVector phases_;
    CVector coefficients_;
    std::optional<int> bits_;
};

struct QcqpData
{
    CMatrix coupled_channel; // Gc, (Nt*Nr) x M
    CVector direct_vector;   // h_v, Nt*Nr
    CMatrix r;               // (M+1) x (M+1), Hermitian
    double constant_term = 0.0; // h_v^H h_v

    int num_irs() const noexcept { return static_cast<int>(coupled_channel.cols()); }
};

std::vector<int> nonzero_index_set(int m);

/// Column m = G[m,:]^T kron H_r^H[:,m]. Throws std::invalid_argument on shape mismatch.
CMatrix coupled_channel(const CMatrix &ap_irs, const CMatrix &irs_user);

/// vec(H_d^H), column-stacked.
CVector vectorize_direct(const CMatrix &direct);

CMatrix build_r(const CMatrix &coupled, const CVector &direct_vector);

QcqpData make_qcqp(const ChannelSet &channels);

/// x^H R x for a homogenized vector x (real part; R Hermitian).
double homogenized_objective(const CMatrix &r, const CVector &x);

/// QCQP objective at theta, excluding the constant h_v^H h_v.
double qcqp_objective(const QcqpData &data, const CVector &coefficients);
inline double qcqp_objective(const QcqpData &data, const PhaseVector &theta)
{
    return qcqp_objective(data, theta.coefficients());
}

} // namespace irsmimo
