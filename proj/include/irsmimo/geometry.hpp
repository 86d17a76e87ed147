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

// Channel synthesis from scenario geometry: UPA steering vectors, path loss
// and the Rayleigh / Rician channel draws for the direct and reflected links.

#pragma once

#include "irsmimo/random.hpp"
#include "irsmimo/types.hpp"

#include <cstdint>
#include <limits>
#include <optional>

namespace irsmimo
{

/// Uniform planar array. Elements are flattened m-major: index = m * height + n,
/// with m the horizontal and n the vertical position.
struct UpaGeometry
{
    int width = 1;
    int height = 1;
    double spacing_over_wavelength = 0.5;

    int elements() const noexcept { return width * height; }
    void validate() const;

    /// Planar layout for `elements` elements: width is the largest divisor not
    /// exceeding sqrt(elements), height = elements / width (64 -> 8x8, 48 -> 6x8).
    static UpaGeometry factorize(int elements, double spacing_over_wavelength = 0.5);
};

struct Position2
{
    double x = 0.0;
    double y = 0.0;
};

enum class PathlossMode
{
    distance_sum,
    distance_product,
};

/// Sentinel for "infinite" Rician factor or quantization resolution.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct ScenarioConfig
{
    UpaGeometry ap_geometry{4, 4, 0.5};
    UpaGeometry user_geometry{4, 4, 0.5};
    UpaGeometry irs_geometry{8, 8, 0.5};
    int num_streams = 16;

    Position2 ap_position{0.0, 0.0};
    Position2 user_position{200.0, 30.0};
    Position2 irs_position{200.0, 0.0};

    double transmit_power_dbm = 30.0;
    double noise_psd_dbm_hz = -170.0;
    double bandwidth_hz = 180e3;

    double rician_kappa1 = kInfinity; // IRS-user link, linear
    double rician_kappa2 = 10.0;      // AP-IRS link, linear (10 dB)
    PathlossMode pathloss_mode = PathlossMode::distance_product;

    /// Phase resolution in bits; nullopt means continuous phases.
    std::optional<int> quantization_bits = std::nullopt;
    std::uint64_t seed = 1;

    int num_tx() const noexcept { return ap_geometry.elements(); }
    int num_rx() const noexcept { return user_geometry.elements(); }
    int num_irs() const noexcept { return irs_geometry.elements(); }

    /// Throws std::invalid_argument / std::domain_error on violated invariants.
    void validate() const;
};

/// Azimuth in (-pi, pi], elevation in (-pi/2, pi/2]. Index 1 is the IRS-user
/// link, index 2 the AP-IRS link; r = arrival side, t = departure side.
struct AngleSet
{
    double azimuth_r1 = 0.0, azimuth_t1 = 0.0, azimuth_r2 = 0.0, azimuth_t2 = 0.0;
    double elevation_r1 = 0.0, elevation_t1 = 0.0, elevation_r2 = 0.0, elevation_t2 = 0.0;

    bool valid() const noexcept;
};

/// One channel realization with path loss applied.
///   direct       H_d : Nt x Nr  (the AP-user link is H_d^H)
///   irs_user     H_r : M  x Nr  (the IRS-user link is H_r^H)
///   ap_irs       G   : M  x Nt
struct ChannelSet
{
    CMatrix direct;
    CMatrix irs_user;
    CMatrix ap_irs;

    int num_tx() const noexcept { return static_cast<int>(direct.rows()); }
    int num_rx() const noexcept { return static_cast<int>(direct.cols()); }
    int num_irs() const noexcept { return static_cast<int>(ap_irs.rows()); }

    /// Throws std::invalid_argument on inconsistent shapes or non-finite entries.
    void validate() const;

    /// FNV-1a over the raw entries; identifies a realization for paired-trial checks.
    std::uint64_t fingerprint() const;
};

struct Distances
{
    double ap_user = 0.0;
    double ap_irs = 0.0;
    double irs_user = 0.0;
};

CVector steering_vector(const UpaGeometry &geom, double azimuth, double elevation);

/// a(arrival) * a(departure)^H, shape rx.elements() x tx.elements().
CMatrix los_component(const UpaGeometry &rx_geom, const UpaGeometry &tx_geom,
                      double arrival_azimuth, double arrival_elevation,
                      double departure_azimuth, double departure_elevation);

double pathloss_direct_db(double d0);
double pathloss_reflected_db(double d_ap_irs, double d_irs_user, PathlossMode mode);

/// Path loss in dB -> linear amplitude factor 10^(-loss/20).
double db_to_amplitude(double loss_db);

Distances scenario_distances(const ScenarioConfig &cfg);

AngleSet draw_angles(RandomStream &rng);

/// L0(d0) * CN(0,1)^{Nt x Nr}.
CMatrix draw_direct_channel(const ScenarioConfig &cfg, RandomStream &rng);

struct ReflectedChannels
{
    CMatrix irs_user; // H_r
    CMatrix ap_irs;   // G
};

/// Rician draws of H_r and G. The single reflected-link loss is split evenly in
/// dB between the two hops, so the cascade H_r^H diag(theta) G carries exactly
/// pathloss_reflected_db of attenuation.
ReflectedChannels draw_reflected_channels(const ScenarioConfig &cfg, const AngleSet &angles, RandomStream &rng);

/// LoS / NLoS mixing weights sqrt(k/(1+k)), sqrt(1/(1+k)); exact at k = inf.
std::pair<double, double> rician_weights(double kappa);

/// Convenience: angles, direct and reflected draws for one trial, each from its
/// own substream of (cfg.seed, trial_index).
ChannelSet draw_channel_set(const ScenarioConfig &cfg, std::uint64_t trial_index);

} // namespace irsmimo
