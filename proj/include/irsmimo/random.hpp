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

#include "irsmimo/types.hpp"

#include <cstdint>
#include <random>

namespace irsmimo
{

/// Purpose tags for derived random substreams. Each consumer of randomness in a
/// trial gets its own stream so that adding or removing a method never shifts
/// the draws seen by another one.
enum class StreamTag : std::uint64_t
{
    angles = 1,
    direct_channel = 2,
    reflected_channels = 3,
    random_phases = 4,
    sdp_init = 5,
    randomization = 6,
    phase_init = 7,
};

/// SplitMix64 finalizer. Used to turn (seed, trial, tag) counters into
/// well-separated engine seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Seed of the substream for `tag` in trial `trial_index` under `master_seed`.
/// Depends only on its three arguments, so trials are order independent.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t trial_index, StreamTag tag) noexcept
{
    return mix64(mix64(mix64(master_seed) ^ trial_index) ^ static_cast<std::uint64_t>(tag));
}

/// A seeded random stream. Thin wrapper over std::mt19937_64 with the two
/// distributions the simulator needs.
class RandomStream
{
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    RandomStream(std::uint64_t master_seed, std::uint64_t trial_index, StreamTag tag)
        : engine_(derive_seed(master_seed, trial_index, tag))
    {
    }

    /// Circularly-symmetric complex Gaussian with unit variance: CN(0, 1).
    Complex cscg()
    {
        const double re = normal_(engine_);
        const double im = normal_(engine_);
        return {re * kHalfSqrt, im * kHalfSqrt};
    }

    CMatrix cscg_matrix(Eigen::Index rows, Eigen::Index cols)
    {
        CMatrix out(rows, cols);
        // Column-major fill order is part of the determinism contract.
        for (Eigen::Index c = 0; c < cols; ++c)
            for (Eigen::Index r = 0; r < rows; ++r)
                out(r, c) = cscg();
        return out;
    }

    CVector cscg_vector(Eigen::Index n) { return cscg_matrix(n, 1).col(0); }

    /// Uniform on [0, 1).
    double uniform() { return uniform_(engine_); }

    /// Uniform on the half-open interval (lo, hi].
    double uniform_left_open(double lo, double hi) { return hi - (hi - lo) * uniform(); }

    std::mt19937_64 &engine() noexcept { return engine_; }

  private:
    static constexpr double kHalfSqrt = 0.70710678118654752440;

    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

} // namespace irsmimo
