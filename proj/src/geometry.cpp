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

#include "irsmimo/geometry.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

namespace irsmimo
{

void UpaGeometry::validate() const
{
    if (width < 1 || height < 1)
        throw std::invalid_argument("UpaGeometry: width and height must be >= 1");
    if (!(spacing_over_wavelength > 0.0) || !std::isfinite(spacing_over_wavelength))
        throw std::invalid_argument("UpaGeometry: spacing_over_wavelength must be positive and finite");
}

UpaGeometry UpaGeometry::factorize(int elements, double spacing_over_wavelength)
{
    if (elements < 1)
        throw std::invalid_argument("UpaGeometry::factorize: element count must be >= 1");
    int width = 1;
    for (int w = 1; static_cast<long>(w) * w <= elements; ++w)
        if (elements % w == 0)
            width = w;
    return {width, elements / width, spacing_over_wavelength};
}

void ScenarioConfig::validate() const
{
    ap_geometry.validate();
    user_geometry.validate();
    irs_geometry.validate();
    if (num_streams < 1)
        throw std::invalid_argument("ScenarioConfig: num_streams must be >= 1");
    if (num_streams != num_rx())
        throw std::invalid_argument("ScenarioConfig: num_streams must equal the receive antenna count");
    if (num_rx() > num_tx())
        throw std::invalid_argument("ScenarioConfig: receive antennas must not exceed transmit antennas");
    if (!(rician_kappa1 >= 0.0) || !(rician_kappa2 >= 0.0))
        throw std::invalid_argument("ScenarioConfig: Rician factors must be >= 0");
    if (!std::isfinite(transmit_power_dbm) || !std::isfinite(noise_psd_dbm_hz))
        throw std::invalid_argument("ScenarioConfig: power figures must be finite");
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("ScenarioConfig: bandwidth must be positive");
    if (quantization_bits && *quantization_bits < 1)
        throw std::invalid_argument("ScenarioConfig: quantization_bits must be >= 1");
    scenario_distances(*this);
}

bool AngleSet::valid() const noexcept
{
    const auto az = [](double a) { return a > -kPi && a <= kPi; };
    const auto el = [](double a) { return a > -kPi / 2 && a <= kPi / 2; };
    return az(azimuth_r1) && az(azimuth_t1) && az(azimuth_r2) && az(azimuth_t2) && el(elevation_r1) &&
           el(elevation_t1) && el(elevation_r2) && el(elevation_t2);
}

void ChannelSet::validate() const
{
    if (irs_user.cols() != direct.cols())
        throw std::invalid_argument("ChannelSet: H_r and H_d disagree on Nr");
    if (ap_irs.cols() != direct.rows())
        throw std::invalid_argument("ChannelSet: G and H_d disagree on Nt");
    if (ap_irs.rows() != irs_user.rows())
        throw std::invalid_argument("ChannelSet: G and H_r disagree on M");
    if (!direct.allFinite() || !irs_user.allFinite() || !ap_irs.allFinite())
        throw std::invalid_argument("ChannelSet: non-finite entries");
}

std::uint64_t ChannelSet::fingerprint() const
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    const auto feed = [&h](const CMatrix &m) {
        const auto *bytes = reinterpret_cast<const unsigned char *>(m.data());
        const std::size_t n = static_cast<std::size_t>(m.size()) * sizeof(Complex);
        for (std::size_t i = 0; i < n; ++i)
        {
            h ^= bytes[i];
            h *= 0x100000001b3ull;
        }
        h ^= static_cast<std::uint64_t>(m.rows()) * 0x9E3779B97F4A7C15ull;
    };
    feed(direct);
    feed(irs_user);
    feed(ap_irs);
    return h;
}

CVector steering_vector(const UpaGeometry &geom, double azimuth, double elevation)
{
    geom.validate();
    const double k = 2.0 * kPi * geom.spacing_over_wavelength;
    const double horizontal = std::sin(azimuth) * std::sin(elevation);
    const double vertical = std::cos(elevation);
    CVector a(geom.elements());
    for (int m = 0; m < geom.width; ++m)
        for (int n = 0; n < geom.height; ++n)
            a(m * geom.height + n) = std::polar(1.0, k * (m * horizontal + n * vertical));
    return a;
}

CMatrix los_component(const UpaGeometry &rx_geom, const UpaGeometry &tx_geom,
                      double arrival_azimuth, double arrival_elevation,
                      double departure_azimuth, double departure_elevation)
{
    const CVector arrival = steering_vector(rx_geom, arrival_azimuth, arrival_elevation);
    const CVector departure = steering_vector(tx_geom, departure_azimuth, departure_elevation);
    return arrival * departure.adjoint();
}

namespace
{

void require_positive_distance(double d, const char *what)
{
    if (!(d > 0.0) || !std::isfinite(d))
        throw std::domain_error(std::string(what) + ": distance must be positive and finite");
}

} // namespace

double pathloss_direct_db(double d0)
{
    require_positive_distance(d0, "pathloss_direct_db");
    return 32.6 + 36.7 * std::log10(d0);
}

double pathloss_reflected_db(double d_ap_irs, double d_irs_user, PathlossMode mode)
{
    require_positive_distance(d_ap_irs, "pathloss_reflected_db");
    require_positive_distance(d_irs_user, "pathloss_reflected_db");
    const double effective = mode == PathlossMode::distance_sum ? d_ap_irs + d_irs_user : d_ap_irs * d_irs_user;
    return 35.6 + 22.0 * std::log10(effective);
}

double db_to_amplitude(double loss_db)
{
    return std::pow(10.0, -loss_db / 20.0);
}

Distances scenario_distances(const ScenarioConfig &cfg)
{
    const auto dist = [](Position2 a, Position2 b) { return std::hypot(a.x - b.x, a.y - b.y); };
    Distances d{dist(cfg.ap_position, cfg.user_position), dist(cfg.ap_position, cfg.irs_position),
                dist(cfg.irs_position, cfg.user_position)};
    if (!(d.ap_user > 0.0) || !(d.ap_irs > 0.0) || !(d.irs_user > 0.0))
        throw std::domain_error("scenario_distances: coincident nodes");
    if (!std::isfinite(d.ap_user) || !std::isfinite(d.ap_irs) || !std::isfinite(d.irs_user))
        throw std::domain_error("scenario_distances: non-finite position");
    return d;
}

AngleSet draw_angles(RandomStream &rng)
{
    const auto az = [&rng] { return rng.uniform_left_open(-kPi, kPi); };
    const auto el = [&rng] { return rng.uniform_left_open(-kPi / 2, kPi / 2); };
    AngleSet a;
    a.azimuth_r1 = az();
    a.azimuth_t1 = az();
    a.azimuth_r2 = az();
    a.azimuth_t2 = az();
    a.elevation_r1 = el();
    a.elevation_t1 = el();
    a.elevation_r2 = el();
    a.elevation_t2 = el();
    return a;
}

CMatrix draw_direct_channel(const ScenarioConfig &cfg, RandomStream &rng)
{
    const Distances d = scenario_distances(cfg);
    const double l0 = db_to_amplitude(pathloss_direct_db(d.ap_user));
    return l0 * rng.cscg_matrix(cfg.num_tx(), cfg.num_rx());
}

std::pair<double, double> rician_weights(double kappa)
{
    if (!(kappa >= 0.0))
        throw std::invalid_argument("rician_weights: kappa must be >= 0");
    if (std::isinf(kappa))
        return {1.0, 0.0};
    return {std::sqrt(kappa / (1.0 + kappa)), std::sqrt(1.0 / (1.0 + kappa))};
}

namespace
{

// Exact limits: a zero weight drops its term instead of multiplying by zero,
// so a non-finite partner can never leak a NaN in.
CMatrix rician_mix(double kappa, const CMatrix &los, const CMatrix &nlos)
{
    const auto [w_los, w_nlos] = rician_weights(kappa);
    if (w_nlos == 0.0)
        return los;
    if (w_los == 0.0)
        return nlos;
    return w_los * los + w_nlos * nlos;
}

} // namespace

ReflectedChannels draw_reflected_channels(const ScenarioConfig &cfg, const AngleSet &angles, RandomStream &rng)
{
    const Distances d = scenario_distances(cfg);
    const double total = db_to_amplitude(pathloss_reflected_db(d.ap_irs, d.irs_user, cfg.pathloss_mode));
    const double per_hop = std::sqrt(total);

    const int m = cfg.num_irs();
    // H_r is M x Nr: IRS-side steering vector times user-side one, conjugated.
    const CMatrix los_r = los_component(cfg.irs_geometry, cfg.user_geometry, angles.azimuth_r1, angles.elevation_r1,
                                        angles.azimuth_t1, angles.elevation_t1);
    const CMatrix los_g = los_component(cfg.irs_geometry, cfg.ap_geometry, angles.azimuth_r2, angles.elevation_r2,
                                        angles.azimuth_t2, angles.elevation_t2);

    // NLoS draws are consumed unconditionally so the stream layout does not
    // depend on the Rician factors.
    const CMatrix nlos_r = rng.cscg_matrix(m, cfg.num_rx());
    const CMatrix nlos_g = rng.cscg_matrix(m, cfg.num_tx());

    return {per_hop * rician_mix(cfg.rician_kappa1, los_r, nlos_r), per_hop * rician_mix(cfg.rician_kappa2, los_g, nlos_g)};
}

ChannelSet draw_channel_set(const ScenarioConfig &cfg, std::uint64_t trial_index)
{
    RandomStream angle_rng(cfg.seed, trial_index, StreamTag::angles);
    RandomStream direct_rng(cfg.seed, trial_index, StreamTag::direct_channel);
    RandomStream reflected_rng(cfg.seed, trial_index, StreamTag::reflected_channels);

    const AngleSet angles = draw_angles(angle_rng);
    ChannelSet set;
    set.direct = draw_direct_channel(cfg, direct_rng);
    auto reflected = draw_reflected_channels(cfg, angles, reflected_rng);
    set.irs_user = std::move(reflected.irs_user);
    set.ap_irs = std::move(reflected.ap_irs);
    return set;
}

} // namespace irsmimo
