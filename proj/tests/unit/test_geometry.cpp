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

#include "irsmimo/geometry.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

using namespace irsmimo;

TEST_CASE("steering_vector - documented examples")
{
    const CVector single = steering_vector({1, 1, 0.5}, 1.234, -0.4);
    REQUIRE(single.size() == 1);
    CHECK(std::abs(single(0) - Complex(1.0, 0.0)) < 1e-15);

    const CVector flat = steering_vector({2, 1, 0.5}, 0.0, kPi / 2);
    CHECK(std::abs(flat(0) - 1.0) < 1e-15);
    CHECK(std::abs(flat(1) - 1.0) < 1e-15);

    // Vertical pair at zero elevation: n = 1 picks up exp(j pi).
    const CVector vertical = steering_vector({1, 2, 0.5}, 0.77, 0.0);
    CHECK(std::abs(vertical(0) - 1.0) < 1e-15);
    CHECK(std::abs(vertical(1) + 1.0) < 1e-15);
}

TEST_CASE("steering_vector - m-major flattening and unit modulus")
{
    const UpaGeometry g{3, 2, 0.5};
    const double az = 0.4, el = 1.1;
    const CVector a = steering_vector(g, az, el);
    REQUIRE(a.size() == 6);
    for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 2; ++n)
        {
            const double phase = kPi * (m * std::sin(az) * std::sin(el) + n * std::cos(el));
            CHECK(std::abs(a(m * 2 + n) - std::polar(1.0, phase)) < 1e-14);
        }

    RandomStream rng(11);
    for (int i = 0; i < 100; ++i)
    {
        const UpaGeometry gi{1 + i % 5, 1 + (i / 5) % 4, 0.5};
        const CVector v = steering_vector(gi, rng.uniform_left_open(-kPi, kPi), rng.uniform_left_open(-kPi / 2, kPi / 2));
        CHECK((v.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("UpaGeometry - validation and factorization")
{
    CHECK_THROWS_AS(UpaGeometry({0, 1, 0.5}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(UpaGeometry({1, 1, 0.0}).validate(), std::invalid_argument);

    const auto f64 = UpaGeometry::factorize(64);
    CHECK(f64.width == 8);
    CHECK(f64.height == 8);
    const auto f48 = UpaGeometry::factorize(48);
    CHECK(f48.width == 6);
    CHECK(f48.height == 8);
    const auto f80 = UpaGeometry::factorize(80);
    CHECK(f80.width == 8);
    CHECK(f80.height == 10);
    const auto prime = UpaGeometry::factorize(17);
    CHECK(prime.width == 1);
    CHECK(prime.height == 17);
    CHECK_THROWS_AS(UpaGeometry::factorize(0), std::invalid_argument);
}

TEST_CASE("path loss formulas")
{
    CHECK(pathloss_direct_db(1.0) == doctest::Approx(32.6).epsilon(1e-12));
    CHECK(pathloss_direct_db(10.0) == doctest::Approx(69.3).epsilon(1e-12));
    // AP (0,0) to user (200,30).
    CHECK(pathloss_direct_db(std::hypot(200.0, 30.0)) == doctest::Approx(117.22512270).epsilon(1e-9));

    CHECK(pathloss_reflected_db(1.0, 1.0, PathlossMode::distance_product) == doctest::Approx(35.6).epsilon(1e-12));
    CHECK(pathloss_reflected_db(10.0, 10.0, PathlossMode::distance_sum) == doctest::Approx(64.22265990).epsilon(1e-9));
    CHECK(pathloss_reflected_db(195.3, 30.366, PathlossMode::distance_product) ==
          doctest::Approx(118.60797628).epsilon(1e-9));

    CHECK_THROWS_AS(pathloss_direct_db(0.0), std::domain_error);
    CHECK_THROWS_AS(pathloss_direct_db(-3.0), std::domain_error);
    CHECK_THROWS_AS(pathloss_reflected_db(1.0, 0.0, PathlossMode::distance_sum), std::domain_error);

    // Strictly increasing in each distance.
    for (double d = 1.0; d < 500.0; d *= 1.7)
    {
        CHECK(pathloss_direct_db(d * 1.01) > pathloss_direct_db(d));
        for (auto mode : {PathlossMode::distance_sum, PathlossMode::distance_product})
        {
            CHECK(pathloss_reflected_db(d * 1.01, 30.0, mode) > pathloss_reflected_db(d, 30.0, mode));
            CHECK(pathloss_reflected_db(30.0, d * 1.01, mode) > pathloss_reflected_db(30.0, d, mode));
        }
    }
}

TEST_CASE("db_to_amplitude")
{
    CHECK(db_to_amplitude(0.0) == 1.0);
    CHECK(db_to_amplitude(20.0) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(db_to_amplitude(117.225) == doctest::Approx(1.376416911533926e-06).epsilon(1e-12));
}

TEST_CASE("los_component - examples and rank one")
{
    const CMatrix one = los_component({1, 1, 0.5}, {1, 1, 0.5}, 0.3, 0.2, -1.0, 0.9);
    CHECK(std::abs(one(0, 0) - 1.0) < 1e-15);

    const CMatrix col = los_component({2, 1, 0.5}, {1, 1, 0.5}, 0.0, kPi / 2, 0.5, 0.5);
    REQUIRE(col.rows() == 2);
    REQUIRE(col.cols() == 1);
    CHECK(std::abs(col(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(col(1, 0) - 1.0) < 1e-15);

    RandomStream rng(5);
    for (int i = 0; i < 50; ++i)
    {
        const CMatrix los = los_component({4, 2, 0.5}, {3, 3, 0.5}, rng.uniform_left_open(-kPi, kPi),
                                          rng.uniform_left_open(-kPi / 2, kPi / 2), rng.uniform_left_open(-kPi, kPi),
                                          rng.uniform_left_open(-kPi / 2, kPi / 2));
        CHECK((los.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-13);
        const Eigen::VectorXd s = Eigen::JacobiSVD<CMatrix>(los).singularValues();
        CHECK(s(1) < 1e-10 * s(0));
    }
}

TEST_CASE("scenario_distances")
{
    ScenarioConfig cfg;
    const Distances d = scenario_distances(cfg);
    CHECK(d.ap_user == doctest::Approx(202.23748416).epsilon(1e-10));
    CHECK(d.ap_irs == doctest::Approx(200.0));
    CHECK(d.irs_user == doctest::Approx(30.0));

    cfg.irs_position = cfg.ap_position;
    CHECK_THROWS_AS(scenario_distances(cfg), std::domain_error);
}

TEST_CASE("ScenarioConfig - invariants")
{
    ScenarioConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.num_streams = 8;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = ScenarioConfig{};
    cfg.user_geometry = {4, 8, 0.5};
    cfg.num_streams = 32;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument); // Nr > Nt
    cfg = ScenarioConfig{};
    cfg.rician_kappa2 = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = ScenarioConfig{};
    cfg.user_position = cfg.ap_position;
    CHECK_THROWS_AS(cfg.validate(), std::domain_error);
}

TEST_CASE("draw_direct_channel - determinism, statistics and path-loss scaling")
{
    ScenarioConfig cfg;
    RandomStream a(99), b(99);
    const CMatrix ha = draw_direct_channel(cfg, a);
    const CMatrix hb = draw_direct_channel(cfg, b);
    CHECK(ha == hb);
    CHECK(ha.rows() == cfg.num_tx());
    CHECK(ha.cols() == cfg.num_rx());

    // Unit-variance CSCG entries once path loss is removed.
    cfg.ap_position = {0.0, 0.0};
    cfg.user_position = {1.0, 0.0};
    const double l0 = db_to_amplitude(pathloss_direct_db(1.0));
    RandomStream rng(1234);
    const int draws = 10000;
    double acc = 0.0;
    for (int i = 0; i < draws; ++i)
        acc += (draw_direct_channel(cfg, rng) / l0).squaredNorm() / (cfg.num_tx() * cfg.num_rx());
    CHECK(acc / draws == doctest::Approx(1.0).epsilon(0.05));

    // Same seed, d0 = 10 vs d0 = 1: entrywise ratio equals the path-loss ratio.
    ScenarioConfig near = cfg, far = cfg;
    far.user_position = {10.0, 0.0};
    RandomStream s1(7), s2(7);
    const CMatrix hn = draw_direct_channel(near, s1);
    const CMatrix hf = draw_direct_channel(far, s2);
    const double expected = std::pow(10.0, -(69.3 - 32.6) / 20.0);
    CHECK(((hf.array() / hn.array()) - expected).abs().maxCoeff() < 1e-12);
}

TEST_CASE("NLoS entry variance within Monte-Carlo confidence")
{
    RandomStream rng(2024);
    const int n = 20000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const double p = std::norm(rng.cscg());
        sum += p;
        sum_sq += p * p;
    }
    const double mean = sum / n;
    // |CN(0,1)|^2 is Exp(1): standard deviation 1.
    const double sigma = std::sqrt(sum_sq / n - mean * mean) / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(mean - 1.0) < 3.0 * sigma);
}

TEST_CASE("draw_reflected_channels - Rician limits and weights")
{
    ScenarioConfig cfg;
    cfg.irs_geometry = {2, 3, 0.5};
    const Distances d = scenario_distances(cfg);
    const double per_hop = std::sqrt(db_to_amplitude(pathloss_reflected_db(d.ap_irs, d.irs_user, cfg.pathloss_mode)));

    AngleSet angles;
    angles.azimuth_r1 = 0.3;
    angles.elevation_r1 = -0.2;
    angles.azimuth_t1 = 1.1;
    angles.elevation_t1 = 0.6;
    angles.azimuth_r2 = -2.0;
    angles.elevation_r2 = 0.1;
    angles.azimuth_t2 = 2.5;
    angles.elevation_t2 = -1.2;
    REQUIRE(angles.valid());

    const CMatrix los_r = los_component(cfg.irs_geometry, cfg.user_geometry, 0.3, -0.2, 1.1, 0.6);
    const CMatrix los_g = los_component(cfg.irs_geometry, cfg.ap_geometry, -2.0, 0.1, 2.5, -1.2);

    SUBCASE("kappa1 = inf is pure LoS, kappa2 = 0 is pure NLoS")
    {
        cfg.rician_kappa1 = kInfinity;
        cfg.rician_kappa2 = 0.0;
        RandomStream rng(3);
        const auto ch = draw_reflected_channels(cfg, angles, rng);
        CHECK(ch.irs_user.allFinite());
        CHECK(((ch.irs_user - per_hop * los_r).cwiseAbs().maxCoeff()) == 0.0);

        RandomStream replay(3);
        const CMatrix nlos_r = replay.cscg_matrix(cfg.num_irs(), cfg.num_rx());
        const CMatrix nlos_g = replay.cscg_matrix(cfg.num_irs(), cfg.num_tx());
        (void)nlos_r;
        CHECK(((ch.ap_irs - per_hop * nlos_g).cwiseAbs().maxCoeff()) == 0.0);
    }

    SUBCASE("kappa = 10 (10 dB) mixes with sqrt(10/11), sqrt(1/11)")
    {
        const auto [w_los, w_nlos] = rician_weights(10.0);
        CHECK(w_los == doctest::Approx(std::sqrt(10.0 / 11.0)).epsilon(1e-15));
        CHECK(w_nlos == doctest::Approx(std::sqrt(1.0 / 11.0)).epsilon(1e-15));

        cfg.rician_kappa1 = 10.0;
        cfg.rician_kappa2 = 10.0;
        RandomStream rng(8), replay(8);
        const auto ch = draw_reflected_channels(cfg, angles, rng);
        const CMatrix nlos_r = replay.cscg_matrix(cfg.num_irs(), cfg.num_rx());
        const CMatrix nlos_g = replay.cscg_matrix(cfg.num_irs(), cfg.num_tx());
        CHECK((ch.irs_user - per_hop * (w_los * los_r + w_nlos * nlos_r)).cwiseAbs().maxCoeff() < 1e-18);
        CHECK((ch.ap_irs - per_hop * (w_los * los_g + w_nlos * nlos_g)).cwiseAbs().maxCoeff() < 1e-18);
    }

    SUBCASE("rician_weights limits are exact")
    {
        CHECK(rician_weights(kInfinity) == std::pair{1.0, 0.0});
        CHECK(rician_weights(0.0) == std::pair{0.0, 1.0});
        CHECK_THROWS_AS(rician_weights(-0.5), std::invalid_argument);
    }
}

TEST_CASE("draw_angles stay in their intervals")
{
    RandomStream rng(77);
    for (int i = 0; i < 2000; ++i)
        CHECK(draw_angles(rng).valid());
}

TEST_CASE("draw_channel_set - bit-deterministic and shape-consistent")
{
    ScenarioConfig cfg;
    cfg.seed = 42;
    const ChannelSet a = draw_channel_set(cfg, 3);
    const ChannelSet b = draw_channel_set(cfg, 3);
    const ChannelSet c = draw_channel_set(cfg, 4);
    CHECK(a.fingerprint() == b.fingerprint());
    CHECK(a.direct == b.direct);
    CHECK(a.fingerprint() != c.fingerprint());
    CHECK_NOTHROW(a.validate());
    CHECK(a.irs_user.rows() == 64);
    CHECK(a.irs_user.cols() == 16);
    CHECK(a.ap_irs.cols() == 16);

    // Substreams are independent of evaluation order.
    const ChannelSet c_again = draw_channel_set(cfg, 4);
    CHECK(c.fingerprint() == c_again.fingerprint());

    ChannelSet bad = a;
    bad.ap_irs = CMatrix::Zero(3, 3);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
