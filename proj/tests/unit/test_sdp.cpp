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

#include "irsmimo/passive.hpp"
#include "irsmimo/sdp.hpp"
#include "oracles.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

using namespace irsmimo;

namespace
{

double min_relative_eigenvalue(const CMatrix &v)
{
    const Eigen::VectorXd lam = Eigen::SelfAdjointEigenSolver<CMatrix>(v).eigenvalues();
    return lam.minCoeff() / std::max(1.0, lam.maxCoeff());
}

void check_feasible(const SdpSolution &s)
{
    for (Eigen::Index i = 0; i < s.v.rows(); ++i)
        CHECK(s.v(i, i) == Complex(1.0, 0.0));
    CHECK((s.v - s.v.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(min_relative_eigenvalue(s.v) >= -1e-10);
    for (Eigen::Index i = 0; i < s.factor.y.rows(); ++i)
        CHECK(s.factor.y.row(i).norm() == doctest::Approx(1.0).epsilon(1e-14));
}

} // namespace

TEST_CASE("default_factor_rank")
{
    CHECK(default_factor_rank(2) == 3);
    CHECK(default_factor_rank(8) == 5);
    CHECK(default_factor_rank(65) == 13);
}

TEST_CASE("identity objective is the trace")
{
    const SdpSolution s = solve_diag_sdp(CMatrix::Identity(3, 3));
    CHECK(s.objective == doctest::Approx(3.0).epsilon(1e-14));
    check_feasible(s);
}

TEST_CASE("2x2 exchange matrix")
{
    CMatrix r(2, 2);
    r << 0.0, 1.0, 1.0, 0.0;
    const SdpSolution s = solve_diag_sdp(r);
    CHECK(s.objective == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(std::abs(s.v(0, 1) - Complex(1.0, 0.0)) < 1e-6);
    CHECK(sdp_upper_bound(r) == doctest::Approx(2.0).epsilon(1e-14));
    check_feasible(s);
}

TEST_CASE("rank-one R reaches (M+1)^2")
{
    CVector c(3);
    c << 1.0, std::polar(1.0, kPi / 4), std::polar(1.0, kPi / 2);
    const CMatrix r = c * c.adjoint();
    const SdpSolution s = solve_diag_sdp(r);
    CHECK(s.objective >= 0.999 * 9.0);
    CHECK(s.objective <= 9.0 + 1e-9);

    // Fine-grid check that 9 is attainable by a unit-modulus vector.
    double best = 0.0;
    const int points = 72;
    for (int a = 0; a < points; ++a)
        for (int b = 0; b < points; ++b)
        {
            CVector x(3);
            x << std::polar(1.0, 2.0 * kPi * a / points), std::polar(1.0, 2.0 * kPi * b / points), 1.0;
            best = std::max(best, oracle::quad(r, x));
        }
    CHECK(best == doctest::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("upper bound examples")
{
    CHECK(sdp_upper_bound(CMatrix::Identity(5, 5)) == doctest::Approx(5.0));
    CHECK(sdp_upper_bound(CMatrix::Zero(4, 4)) == 0.0);
}

TEST_CASE("zero R returns identity")
{
    const SdpSolution s = solve_diag_sdp(CMatrix::Zero(4, 4));
    CHECK(s.converged);
    CHECK(s.objective == 0.0);
    CHECK(s.v.isIdentity());
}

TEST_CASE("feasibility, monotone row updates and sandwich on random instances")
{
    RandomStream rng(2024);
    for (int i = 0; i < 40; ++i)
    {
        const int m = 2 + i % 5;
        const CMatrix r = oracle::random_hermitian(rng, m + 1);
        SdpOptions opts;
        opts.seed = static_cast<std::uint64_t>(i);
        const SdpSolution s = solve_diag_sdp(r, opts);
        check_feasible(s);
        CHECK(s.min_row_gain >= 0.0);
        CHECK(s.objective == doctest::Approx((r * s.v).trace().real()).epsilon(1e-10));

        const double discrete = oracle::exhaustive_discrete(r, 2);
        const double bound = sdp_upper_bound(r);
        CHECK(discrete <= s.objective + 1e-9 * std::abs(s.objective));
        CHECK(s.objective <= bound + 1e-9 * std::abs(bound));
    }
}

TEST_CASE("indefinite R still respects the bound for random unit-modulus vectors")
{
    RandomStream rng(77);
    const CMatrix r = oracle::random_hermitian(rng, 7);
    const double bound = sdp_upper_bound(r);
    const double sdp = solve_diag_sdp(r).objective;
    for (int t = 0; t < 200; ++t)
    {
        const CVector x = random_phases(7, rng).coefficients();
        CHECK(oracle::quad(r, x) <= sdp + 1e-9);
    }
    CHECK(sdp <= bound + 1e-9);
}

TEST_CASE("determinism")
{
    RandomStream rng(5);
    const CMatrix r = oracle::random_hermitian(rng, 9);
    SdpOptions opts;
    opts.seed = 42;
    const SdpSolution a = solve_diag_sdp(r, opts);
    const SdpSolution b = solve_diag_sdp(r, opts);
    CHECK((a.v - b.v).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.iterations == b.iterations);
}
