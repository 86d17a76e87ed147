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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "irsmimo/effective_channel.hpp"
#include "irsmimo/passive.hpp"
#include "irsmimo/qcqp.hpp"
#include "oracles.hpp"

#include <Eigen/QR>

#include <cmath>
#include <stdexcept>

using namespace irsmimo;

namespace
{

ChannelSet random_channels(RandomStream &rng, int nt, int nr, int m)
{
    return {rng.cscg_matrix(nt, nr), rng.cscg_matrix(m, nr), rng.cscg_matrix(m, nt)};
}

CMatrix random_unitary(RandomStream &rng, int n)
{
    Eigen::HouseholderQR<CMatrix> qr(rng.cscg_matrix(n, n));
    return qr.householderQ() * CMatrix::Identity(n, n);
}

} // namespace

TEST_CASE("effective_channel - examples")
{
    const int n = 3;
    ChannelSet identity{CMatrix::Zero(n, n), CMatrix::Identity(n, n), CMatrix::Identity(n, n)};
    const EffectiveChannel h = effective_channel(identity, PhaseVector::zeros(n));
    CHECK((h.matrix - CMatrix::Identity(n, n)).norm() < 1e-15);

    RandomStream rng(1);
    ChannelSet no_reflection = random_channels(rng, 4, 2, 5);
    no_reflection.irs_user.setZero();
    const EffectiveChannel direct_only = effective_channel(no_reflection, random_phases(5, rng));
    CHECK((direct_only.matrix - no_reflection.direct.adjoint()).norm() == 0.0);
    CHECK((no_irs_baseline(no_reflection).matrix - direct_only.matrix).norm() == 0.0);

    for (int i = 0; i < 20; ++i)
    {
        const ChannelSet ch = random_channels(rng, 2, 2, 2);
        const PhaseVector theta = random_phases(2, rng);
        const EffectiveChannel eff = effective_channel(ch, theta);
        const CMatrix loops = oracle::effective_channel_loops(ch.direct, ch.irs_user, ch.ap_irs, theta.coefficients());
        CHECK((eff.matrix - loops).cwiseAbs().maxCoeff() < 1e-14);
        // Reconstructible from its stored components.
        const CMatrix again = eff.components.irs_user.adjoint() * eff.coefficients.asDiagonal() *
                                  eff.components.ap_irs +
                              eff.components.direct.adjoint();
        CHECK((again - eff.matrix).norm() < 1e-14);
    }

    CHECK_THROWS_AS(effective_channel(identity, PhaseVector::zeros(2)), std::invalid_argument);
}

TEST_CASE("active_beamformer - diagonal and hand-SVD examples")
{
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    const ActiveBeamformer w = active_beamformer(d, 2);
    // Phase convention makes the result exactly the identity.
    CHECK((w.matrix - CMatrix::Identity(2, 2)).norm() < 1e-14);
    CHECK_FALSE(w.degenerate);

    CMatrix h = CMatrix::Zero(2, 3);
    h(0, 0) = 1.0;
    h(1, 1) = 2.0;
    const ActiveBeamformer w2 = active_beamformer(h, 2);
    // Largest singular direction is e2, then e1.
    CHECK(std::abs(std::abs(w2.matrix(1, 0)) - 1.0) < 1e-14);
    CHECK(std::abs(std::abs(w2.matrix(0, 1)) - 1.0) < 1e-14);
    CHECK((h * w2.matrix).squaredNorm() == doctest::Approx(5.0).epsilon(1e-14));

    CHECK_THROWS_AS(active_beamformer(h, 3), std::invalid_argument);
    CHECK_THROWS_AS(active_beamformer(h, 0), std::invalid_argument);
}

TEST_CASE("active_beamformer - orthonormal columns, unit-norm budget, deterministic phase")
{
    RandomStream rng(3);
    for (int i = 0; i < 50; ++i)
    {
        const int nr = (i % 2) ? 2 : 4;
        const int nt = (i % 3) ? 4 : 8;
        const CMatrix h = rng.cscg_matrix(nr, nt);
        const ActiveBeamformer w = active_beamformer(h, nr);
        CHECK((w.matrix.adjoint() * w.matrix - CMatrix::Identity(nr, nr)).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(w.matrix.squaredNorm() == doctest::Approx(static_cast<double>(nr)).epsilon(1e-12));
        for (int c = 0; c < nr; ++c)
        {
            CHECK(std::abs(w.matrix(0, c).imag()) < 1e-15);
            CHECK(w.matrix(0, c).real() >= 0.0);
        }
    }
}

TEST_CASE("active_beamformer - rank deficiency is flagged")
{
    CMatrix h = CMatrix::Zero(2, 4);
    h(0, 1) = 2.0;
    const ActiveBeamformer w = active_beamformer(h, 2);
    CHECK(w.degenerate);
    CHECK(w.matrix.cols() == 2);
    CHECK((w.matrix.adjoint() * w.matrix - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("trace identity ||H_eff W_opt||_F^2 = ||H_eff||_F^2 when Ns = Nr <= Nt")
{
    RandomStream rng(10);
    for (int i = 0; i < 200; ++i)
    {
        const int nr = (i % 2) ? 2 : 4;
        const int nt = (i % 4 < 2) ? 4 : 8;
        const CMatrix h = rng.cscg_matrix(nr, nt);
        const ActiveBeamformer w = active_beamformer(h, nr);
        const double rel = std::abs((h * w.matrix).squaredNorm() - frobenius_objective(h)) / frobenius_objective(h);
        CHECK(rel < 1e-9);
    }
}

TEST_CASE("spectrum_efficiency - examples and singular-value oracle")
{
    const CMatrix eye = CMatrix::Identity(2, 2);
    CHECK(spectrum_efficiency(eye, eye, 2.0, 1.0, 2) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(spectrum_efficiency(eye, eye, 0.0, 1.0, 2) == 0.0);
    CHECK(spectrum_efficiency(eye, eye, 1e-300, 1.0, 2) == doctest::Approx(0.0));

    RandomStream rng(4);
    for (int i = 0; i < 50; ++i)
    {
        const CMatrix h = rng.cscg_matrix(3, 5);
        const ActiveBeamformer w = active_beamformer(h, 3);
        const double power = 0.1 + 10.0 * rng.uniform();
        const double noise = 0.01 + rng.uniform();
        const double se = spectrum_efficiency(h, w.matrix, power, noise, 3);
        CHECK(se == doctest::Approx(oracle::spectrum_efficiency_svd(h, w.matrix, power / (3 * noise))).epsilon(1e-11));
        CHECK(se >= 0.0);
    }

    CHECK_THROWS_AS(spectrum_efficiency(eye, eye, 1.0, 0.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(spectrum_efficiency(eye, eye, -1.0, 1.0, 2), std::invalid_argument);
}

TEST_CASE("spectrum_efficiency - invariances and optimality of the SVD beamformer")
{
    RandomStream rng(12);
    for (int i = 0; i < 50; ++i)
    {
        const int nr = 2, nt = 4;
        const CMatrix h = rng.cscg_matrix(nr, nt);
        const ActiveBeamformer w = active_beamformer(h, nr);
        const double se = spectrum_efficiency(h, w.matrix, 5.0, 1.0, nr);

        // W -> W U leaves W W^H unchanged.
        const CMatrix rotated = w.matrix * random_unitary(rng, nr);
        CHECK(spectrum_efficiency(h, rotated, 5.0, 1.0, nr) == doctest::Approx(se).epsilon(1e-12));

        // Strictly increasing in power.
        CHECK(spectrum_efficiency(h, w.matrix, 5.5, 1.0, nr) > se);

        // Any other orthonormal Nt x Ns beamformer does no better.
        const CMatrix other = random_unitary(rng, nt).leftCols(nr);
        CHECK(spectrum_efficiency(h, other, 5.0, 1.0, nr) <= se + 1e-12);
    }
}

TEST_CASE("frobenius_objective and power helpers")
{
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = 4.0;
    CHECK(frobenius_objective(d) == 25.0);
    CHECK(frobenius_objective(CMatrix::Zero(3, 2)) == 0.0);

    CHECK(dbm_to_mw(30.0) == doctest::Approx(1000.0));
    // -170 dBm/Hz over 180 kHz is -117.447 dBm.
    CHECK(10.0 * std::log10(noise_power_mw(-170.0, 180e3)) == doctest::Approx(-117.44727495).epsilon(1e-9));
    CHECK_THROWS_AS(noise_power_mw(-170.0, 0.0), std::invalid_argument);
}

TEST_CASE("frobenius_objective = QCQP objective + h_v^H h_v")
{
    RandomStream rng(21);
    for (int i = 0; i < 50; ++i)
    {
        const ChannelSet ch = random_channels(rng, 3, 2, 4);
        const QcqpData data = make_qcqp(ch);
        const PhaseVector theta = random_phases(4, rng);
        const double f = frobenius_objective(effective_channel(ch, theta));
        CHECK(std::abs(qcqp_objective(data, theta) + data.constant_term - f) / f < 1e-12);
    }
}
