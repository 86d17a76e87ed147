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

#include "irsmimo/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace irsmimo
{

using nlohmann::json;

SweepDefaults::SweepDefaults()
{
    grids[SweepKind::power] = {10, 15, 20, 25, 30};
    grids[SweepKind::elements] = {16, 32, 48, 64, 80};
    grids[SweepKind::distance] = {175, 180, 185, 190, 195, 200, 205};
    grids[SweepKind::bits] = {1, 2, 3, kInfinity};
    grids[SweepKind::convergence] = {48, 64, 80};
}

namespace
{

void reject_unknown(const json &obj, std::initializer_list<const char *> allowed, const std::string &where)
{
    if (!obj.is_object())
        throw std::invalid_argument(where + ": expected an object");
    std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto &item : obj.items())
        if (!keys.count(item.key()))
            throw std::invalid_argument(where + ": unknown key '" + item.key() + "'");
}

// Numbers, or the strings "inf" / "infinity".
double number_or_inf(const json &v, const std::string &key)
{
    if (v.is_number())
        return v.get<double>();
    if (v.is_string())
    {
        const auto s = v.get<std::string>();
        if (s == "inf" || s == "infinity")
            return kInfinity;
    }
    throw std::invalid_argument(key + ": expected a number or \"inf\"");
}

template <typename T>
void read(const json &obj, const char *key, T &out, const std::string &where)
{
    if (!obj.contains(key))
        return;
    try
    {
        out = obj.at(key).get<T>();
    }
    catch (const json::exception &)
    {
        throw std::invalid_argument(where + "." + key + ": wrong type");
    }
}

UpaGeometry read_array(const json &obj, const std::string &where, UpaGeometry current, double spacing)
{
    reject_unknown(obj, {"width", "height", "elements"}, where);
    if (obj.contains("elements"))
    {
        if (obj.contains("width") || obj.contains("height"))
            throw std::invalid_argument(where + ": give either elements or width/height");
        return UpaGeometry::factorize(obj.at("elements").get<int>(), spacing);
    }
    read(obj, "width", current.width, where);
    read(obj, "height", current.height, where);
    current.spacing_over_wavelength = spacing;
    return current;
}

Position2 read_position(const json &v, const std::string &where)
{
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw std::invalid_argument(where + ": expected [x, y]");
    return {v[0].get<double>(), v[1].get<double>()};
}

void read_scenario(const json &obj, ScenarioConfig &sc)
{
    const std::string where = "scenario";
    reject_unknown(obj,
                   {"ap_array", "user_array", "irs_array", "spacing_over_wavelength", "num_streams", "ap_position",
                    "user_position", "irs_position", "transmit_power_dbm", "noise_psd_dbm_hz", "bandwidth_hz",
                    "rician_kappa1", "rician_kappa2", "pathloss", "quantization_bits", "seed"},
                   where);
    double spacing = sc.ap_geometry.spacing_over_wavelength;
    read(obj, "spacing_over_wavelength", spacing, where);
    sc.ap_geometry.spacing_over_wavelength = spacing;
    sc.user_geometry.spacing_over_wavelength = spacing;
    sc.irs_geometry.spacing_over_wavelength = spacing;
    if (obj.contains("ap_array"))
        sc.ap_geometry = read_array(obj["ap_array"], where + ".ap_array", sc.ap_geometry, spacing);
    if (obj.contains("user_array"))
        sc.user_geometry = read_array(obj["user_array"], where + ".user_array", sc.user_geometry, spacing);
    if (obj.contains("irs_array"))
        sc.irs_geometry = read_array(obj["irs_array"], where + ".irs_array", sc.irs_geometry, spacing);
    sc.num_streams = sc.user_geometry.elements();
    read(obj, "num_streams", sc.num_streams, where);
    if (obj.contains("ap_position"))
        sc.ap_position = read_position(obj["ap_position"], where + ".ap_position");
    if (obj.contains("user_position"))
        sc.user_position = read_position(obj["user_position"], where + ".user_position");
    if (obj.contains("irs_position"))
        sc.irs_position = read_position(obj["irs_position"], where + ".irs_position");
    read(obj, "transmit_power_dbm", sc.transmit_power_dbm, where);
    read(obj, "noise_psd_dbm_hz", sc.noise_psd_dbm_hz, where);
    read(obj, "bandwidth_hz", sc.bandwidth_hz, where);
    if (obj.contains("rician_kappa1"))
        sc.rician_kappa1 = number_or_inf(obj["rician_kappa1"], where + ".rician_kappa1");
    if (obj.contains("rician_kappa2"))
        sc.rician_kappa2 = number_or_inf(obj["rician_kappa2"], where + ".rician_kappa2");
    if (obj.contains("pathloss"))
    {
        const auto mode = obj["pathloss"].get<std::string>();
        if (mode == "sum")
            sc.pathloss_mode = PathlossMode::distance_sum;
        else if (mode == "product")
            sc.pathloss_mode = PathlossMode::distance_product;
        else
            throw std::invalid_argument(where + ".pathloss: expected \"sum\" or \"product\"");
    }
    if (obj.contains("quantization_bits"))
    {
        const double bits = number_or_inf(obj["quantization_bits"], where + ".quantization_bits");
        if (std::isinf(bits))
            sc.quantization_bits = std::nullopt;
        else if (bits >= 1 && bits == std::floor(bits))
            sc.quantization_bits = static_cast<int>(bits);
        else
            throw std::invalid_argument(where + ".quantization_bits: expected a positive integer or \"inf\"");
    }
    read(obj, "seed", sc.seed, where);
}

void read_solver(const json &obj, SolverSettings &s)
{
    const std::string where = "solver";
    reject_unknown(obj, {"sweeps", "tol", "init", "candidates", "sdp_rank", "sdp_max_sweeps", "sdp_tol"}, where);
    read(obj, "sweeps", s.iterative_sweeps, where);
    read(obj, "tol", s.iterative_tol, where);
    if (obj.contains("init"))
    {
        const auto init = obj["init"].get<std::string>();
        if (init == "zeros")
            s.init = PhaseInit::zeros;
        else if (init == "random")
            s.init = PhaseInit::random;
        else
            throw std::invalid_argument(where + ".init: expected \"zeros\" or \"random\"");
    }
    read(obj, "candidates", s.sdr.num_candidates, where);
    read(obj, "sdp_rank", s.sdr.sdp.rank, where);
    read(obj, "sdp_max_sweeps", s.sdr.sdp.max_sweeps, where);
    read(obj, "sdp_tol", s.sdr.sdp.tol, where);
    if (s.iterative_sweeps < 1 || s.sdr.num_candidates < 1 || s.sdr.sdp.max_sweeps < 1 || s.sdr.sdp.rank < 0)
        throw std::invalid_argument("solver: counts must be positive");
}

void read_sweep(const json &obj, SweepDefaults &d)
{
    const std::string where = "sweep";
    reject_unknown(obj, {"trials", "methods", "grids", "convergence_sweeps"}, where);
    read(obj, "trials", d.trials, where);
    read(obj, "convergence_sweeps", d.convergence_sweeps, where);
    if (obj.contains("methods"))
    {
        d.methods.clear();
        for (const auto &m : obj["methods"])
        {
            const auto parsed = parse_method(m.get<std::string>());
            if (!parsed)
                throw std::invalid_argument(where + ".methods: unknown method '" + m.get<std::string>() + "'");
            d.methods.push_back(*parsed);
        }
    }
    if (obj.contains("grids"))
    {
        for (const auto &item : obj["grids"].items())
        {
            const auto kind = parse_sweep_kind(item.key());
            if (!kind)
                throw std::invalid_argument(where + ".grids: unknown sweep '" + item.key() + "'");
            std::vector<double> grid;
            for (const auto &v : item.value())
                grid.push_back(number_or_inf(v, where + ".grids." + item.key()));
            d.grids[*kind] = grid;
        }
    }
}

} // namespace

ConfigFile parse_config(const std::string &text)
{
    json doc;
    try
    {
        doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    }
    catch (const json::parse_error &e)
    {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    ConfigFile cfg;
    reject_unknown(doc, {"scenario", "solver", "sweep"}, "config");
    try
    {
        if (doc.contains("scenario"))
            read_scenario(doc["scenario"], cfg.experiment.scenario);
        if (doc.contains("solver"))
            read_solver(doc["solver"], cfg.experiment.solver);
        if (doc.contains("sweep"))
            read_sweep(doc["sweep"], cfg.sweep);
    }
    catch (const json::exception &e)
    {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    cfg.experiment.scenario.validate();
    return cfg;
}

ConfigFile load_config(const std::string &path)
{
    std::ifstream f(path);
    if (!f)
        throw std::runtime_error("cannot open config '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

json to_json(const ExperimentConfig &cfg)
{
    const ScenarioConfig &sc = cfg.scenario;
    const auto arr = [](const UpaGeometry &g) { return json{{"width", g.width}, {"height", g.height}}; };
    const auto pos = [](Position2 p) { return json::array({p.x, p.y}); };
    const auto inf_or = [](double v) -> json {
        if (std::isinf(v))
            return "inf";
        return v;
    };
    json scenario{
        {"ap_array", arr(sc.ap_geometry)},
        {"user_array", arr(sc.user_geometry)},
        {"irs_array", arr(sc.irs_geometry)},
        {"spacing_over_wavelength", sc.irs_geometry.spacing_over_wavelength},
        {"num_streams", sc.num_streams},
        {"ap_position", pos(sc.ap_position)},
        {"user_position", pos(sc.user_position)},
        {"irs_position", pos(sc.irs_position)},
        {"transmit_power_dbm", sc.transmit_power_dbm},
        {"noise_psd_dbm_hz", sc.noise_psd_dbm_hz},
        {"bandwidth_hz", sc.bandwidth_hz},
        {"rician_kappa1", inf_or(sc.rician_kappa1)},
        {"rician_kappa2", inf_or(sc.rician_kappa2)},
        {"pathloss", sc.pathloss_mode == PathlossMode::distance_sum ? "sum" : "product"},
        {"quantization_bits", sc.quantization_bits ? json(*sc.quantization_bits) : json("inf")},
        {"seed", sc.seed},
    };
    json solver{
        {"sweeps", cfg.solver.iterative_sweeps},
        {"tol", cfg.solver.iterative_tol},
        {"init", cfg.solver.init == PhaseInit::zeros ? "zeros" : "random"},
        {"candidates", cfg.solver.sdr.num_candidates},
        {"sdp_rank", cfg.solver.sdr.sdp.rank},
        {"sdp_max_sweeps", cfg.solver.sdr.sdp.max_sweeps},
        {"sdp_tol", cfg.solver.sdr.sdp.tol},
    };
    return json{{"scenario", scenario}, {"solver", solver}};
}

} // namespace irsmimo
