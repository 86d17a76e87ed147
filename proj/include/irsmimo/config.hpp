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

// Experiment configuration files: JSON with // comments allowed. Every key is
// optional; unknown keys are rejected so typos fail loudly.

#pragma once

#include "irsmimo/harness.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <string>
#include <vector>

namespace irsmimo
{

struct SweepDefaults
{
    int trials = 100;
    std::vector<Method> methods{Method::iterative, Method::sdr, Method::random, Method::no_irs};
    std::map<SweepKind, std::vector<double>> grids;
    int convergence_sweeps = 10;

    SweepDefaults();
};

struct ConfigFile
{
    ExperimentConfig experiment;
    SweepDefaults sweep;
};

/// Throws std::invalid_argument with the offending key on schema errors.
ConfigFile parse_config(const std::string &text);
ConfigFile load_config(const std::string &path);

nlohmann::json to_json(const ExperimentConfig &cfg);

} // namespace irsmimo
