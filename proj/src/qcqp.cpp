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

#include "irsmimo/qcqp.hpp"

#include <cmath>
#include <stdexcept>

namespace irsmimo
{

PhaseVector PhaseVector::from_phases(RVector phases, std::optional<int> bits)
{
    PhaseVector out;
    out.coefficients_.resize(phases.size());
    for (Eigen::Index i = 0; i < phases.size(); ++i)
        out.coefficients_(i) = std::polar(1.0, phases(i));
    out.phases_ = std::move(phases);
    out.bits_ = bits;
    return out;
}

PhaseVector PhaseVector::from_coefficients(const CVector &c)
{
    RVector phases(c.size());
    for (Eigen::Index i = 0; i < c.size(); ++i)
        phases(i) = std::arg(c(i));
    return from_phases(std::move(phases));
}

CVector PhaseVector::homogenized() const
{
    CVector x(size() + 1);
    x.head(size()) = coefficients_;
    x(size()) = 1.0;
    return x;
}

std::vector<int> nonzero_index_set(int m)
{
    if (m < 1)
        throw std::invalid_argument("nonzero_index_set: M must be >= 1");
    std::vector<int> out(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        out[static_cast<std::size_t>(i)] = i * m + i;
    return out;
}

CMatrix coupled_channel(const CMatrix &ap_irs, const CMatrix &irs_user)
{
    if (ap_irs.rows() != irs_user.rows())
        throw std::invalid_argument("coupled_channel: G and H_r must have the same number of rows (M)");
    const Eigen::Index m = ap_irs.rows();
    const Eigen::Index nt = ap_irs.cols();
    const Eigen::Index nr = irs_user.cols();

    CMatrix gc(nt * nr, m);
    for (Eigen::Index k = 0; k < m; ++k)
        for (Eigen::Index t = 0; t < nt; ++t)
            for (Eigen::Index r = 0; r < nr; ++r)
                gc(t * nr + r, k) = ap_irs(k, t) * std::conj(irs_user(k, r));
    return gc;
}

CVector vectorize_direct(const CMatrix &direct)
{
    const CMatrix dh = direct.adjoint();
    return Eigen::Map<const CVector>(dh.data(), dh.size());
}

CMatrix build_r(const CMatrix &coupled, const CVector &direct_vector)
{
    if (coupled.rows() != direct_vector.size())
        throw std::invalid_argument("build_r: Gc and h_v row counts differ");
    const Eigen::Index m = coupled.cols();
    CMatrix r = CMatrix::Zero(m + 1, m + 1);
    r.topLeftCorner(m, m).noalias() = coupled.adjoint() * coupled;
    const CVector cross = coupled.adjoint() * direct_vector;
    r.topRightCorner(m, 1) = cross;
    r.bottomLeftCorner(1, m) = cross.adjoint();
    // Enforce exact Hermitian symmetry on the Gram block.
    r.topLeftCorner(m, m) = (0.5 * (r.topLeftCorner(m, m) + r.topLeftCorner(m, m).adjoint())).eval();
    return r;
}

QcqpData make_qcqp(const ChannelSet &channels)
{
    channels.validate();
    QcqpData data;
    data.coupled_channel = coupled_channel(channels.ap_irs, channels.irs_user);
    data.direct_vector = vectorize_direct(channels.direct);
    data.r = build_r(data.coupled_channel, data.direct_vector);
    data.constant_term = data.direct_vector.squaredNorm();
    return data;
}

double homogenized_objective(const CMatrix &r, const CVector &x)
{
    return x.dot(r * x).real();
}

double qcqp_objective(const QcqpData &data, const CVector &coefficients)
{
    if (coefficients.size() != data.num_irs())
        throw std::invalid_argument("qcqp_objective: phase vector length does not match M");
    const CVector gt = data.coupled_channel * coefficients;
    return gt.squaredNorm() + 2.0 * gt.dot(data.direct_vector).real();
}

} // namespace irsmimo
