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

#pragma once

#include "irsmimo/geometry.hpp"
#include "irsmimo/types.hpp"

#include <cmath>

namespace irsmimo
{

class PhaseVector;

/// H_eff = H_r^H diag(theta) G + H_d^H, Nr x Nt. Keeps the inputs it was built
/// from so the composition can be re-checked.
struct EffectiveChannel
{
    CMatrix matrix;
    ChannelSet components;
    CVector coefficients; // empty for the no-IRS baseline
};

/// Top-Ns right singular vectors of H_eff, Nt x Ns, each column phase-normalized
/// so its first non-negligible entry is real and non-negative.
struct ActiveBeamformer
{
    CMatrix matrix;
    RVector singular_values; // all singular values of H_eff, non-increasing
    bool degenerate = false; // rank(H_eff) < Ns
};

/// Throws std::invalid_argument on dimension mismatch.
EffectiveChannel effective_channel(const ChannelSet &channels, const PhaseVector &theta);
EffectiveChannel effective_channel(const ChannelSet &channels, const CVector &coefficients);

ActiveBeamformer active_beamformer(const CMatrix &h_eff, int num_streams);
inline ActiveBeamformer active_beamformer(const EffectiveChannel &h_eff, int num_streams)
{
    return active_beamformer(h_eff.matrix, num_streams);
}

/// log2 det(I + rho/(Ns sigma^2) H W W^H H^H) in bits/s/Hz. Power and noise are
/// linear and must share a unit.
double spectrum_efficiency(const CMatrix &h_eff, const CMatrix &w, double power, double noise_power, int num_streams);
inline double spectrum_efficiency(const EffectiveChannel &h_eff, const ActiveBeamformer &w, double power,
                                  double noise_power, int num_streams)
{
    return spectrum_efficiency(h_eff.matrix, w.matrix, power, noise_power, num_streams);
}

inline double frobenius_objective(const CMatrix &h_eff) { return h_eff.squaredNorm(); }
inline double frobenius_objective(const EffectiveChannel &h_eff) { return h_eff.matrix.squaredNorm(); }

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

/// Thermal noise over the band: psd (dBm/Hz) + 10 log10(bandwidth), in mW.
double noise_power_mw(double noise_psd_dbm_hz, double bandwidth_hz);

} // namespace irsmimo
