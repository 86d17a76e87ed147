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

#include "irsmimo/effective_channel.hpp"
#include "irsmimo/qcqp.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace irsmimo
{

EffectiveChannel effective_channel(const ChannelSet &channels, const CVector &coefficients)
{
    channels.validate();
    if (coefficients.size() != channels.num_irs())
        throw std::invalid_argument("effective_channel: phase vector length does not match the IRS size");
    EffectiveChannel out;
    out.matrix = channels.irs_user.adjoint() * coefficients.asDiagonal() * channels.ap_irs + channels.direct.adjoint();
    out.components = channels;
    out.coefficients = coefficients;
    return out;
}

EffectiveChannel effective_channel(const ChannelSet &channels, const PhaseVector &theta)
{
    return effective_channel(channels, theta.coefficients());
}

ActiveBeamformer active_beamformer(const CMatrix &h_eff, int num_streams)
{
    const Eigen::Index nr = h_eff.rows();
    const Eigen::Index nt = h_eff.cols();
    if (num_streams < 1 || num_streams > std::min(nr, nt))
        throw std::invalid_argument("active_beamformer: need 1 <= Ns <= min(Nr, Nt)");

    Eigen::JacobiSVD<CMatrix> svd(h_eff, Eigen::ComputeFullV);
    ActiveBeamformer out;
    out.singular_values = svd.singularValues();
    out.matrix = svd.matrixV().leftCols(num_streams);

    const double largest = out.singular_values.size() > 0 ? out.singular_values(0) : 0.0;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < out.singular_values.size(); ++i)
        if (largest > 0.0 && out.singular_values(i) > 1e-12 * largest)
            ++rank;
    out.degenerate = rank < num_streams;

    for (Eigen::Index c = 0; c < out.matrix.cols(); ++c)
    {
        auto col = out.matrix.col(c);
        const double scale = col.cwiseAbs().maxCoeff();
        for (Eigen::Index r = 0; r < col.size(); ++r)
        {
            if (std::abs(col(r)) > 1e-12 * scale)
            {
                col *= std::conj(col(r)) / std::abs(col(r));
                col(r) = std::abs(col(r));
                break;
            }
        }
    }
    return out;
}

double spectrum_efficiency(const CMatrix &h_eff, const CMatrix &w, double power, double noise_power, int num_streams)
{
    if (!(power >= 0.0) || !(noise_power > 0.0))
        throw std::invalid_argument("spectrum_efficiency: power must be >= 0 and noise power > 0");
    if (num_streams < 1)
        throw std::invalid_argument("spectrum_efficiency: num_streams must be >= 1");
    if (h_eff.cols() != w.rows())
        throw std::invalid_argument("spectrum_efficiency: H_eff and W dimensions disagree");

    const double snr = power / (num_streams * noise_power);
    const CMatrix hw = h_eff * w;
    CMatrix gram = CMatrix::Identity(h_eff.rows(), h_eff.rows());
    gram.noalias() += snr * hw * hw.adjoint();

    Eigen::LLT<CMatrix> llt(gram);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("spectrum_efficiency: matrix not positive definite");
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < gram.rows(); ++i)
        log_det += 2.0 * std::log2(llt.matrixL()(i, i).real());
    return std::max(log_det, 0.0);
}

double noise_power_mw(double noise_psd_dbm_hz, double bandwidth_hz)
{
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("noise_power_mw: bandwidth must be positive");
    return dbm_to_mw(noise_psd_dbm_hz + 10.0 * std::log10(bandwidth_hz));
}

} // namespace irsmimo
