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

// Python bindings. Matrices cross the boundary as complex128 NumPy arrays;
// configuration crosses as the same JSON text the CLI accepts.

#include "irsmimo/config.hpp"
#include "irsmimo/effective_channel.hpp"
#include "irsmimo/harness.hpp"
#include "irsmimo/passive.hpp"
#include "irsmimo/qcqp.hpp"
#include "irsmimo/sdp.hpp"
#include "irsmimo/validate.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <stdexcept>

namespace py = pybind11;
using namespace irsmimo;

namespace
{

ExperimentConfig experiment_from(const std::string &config_json)
{
    return parse_config(config_json.empty() ? "{}" : config_json).experiment;
}

Method method_from(const std::string &name)
{
    const auto m = parse_method(name);
    if (!m)
        throw std::invalid_argument("unknown method '" + name + "'");
    return *m;
}

py::dict report_dict(const SolverReport &r)
{
    py::dict d;
    d["method"] = std::string(to_string(r.method));
    d["phases"] = r.theta.phases();
    d["objective_trace"] = r.objective_trace;
    d["initial_objective"] = r.initial_objective;
    d["final_objective"] = r.final_objective;
    d["upper_bound"] = r.upper_bound;
    d["sweeps_used"] = r.sweeps_used;
    d["multiply_adds"] = r.multiply_adds;
    d["sdp_objective"] = r.sdp_objective;
    return d;
}

PhaseVector phases_from(const RVector &phases)
{
    return PhaseVector::from_phases(phases);
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Passive and active beamforming for IRS-assisted MIMO links";

    py::register_exception<std::domain_error>(m, "DomainError", PyExc_ValueError);

    m.def(
        "steering_vector",
        [](int width, int height, double spacing, double azimuth, double elevation) {
            return steering_vector({width, height, spacing}, azimuth, elevation);
        },
        py::arg("width"), py::arg("height"), py::arg("spacing") = 0.5, py::arg("azimuth"), py::arg("elevation"));

    m.def(
        "draw_channels",
        [](const std::string &config_json, std::uint64_t trial) {
            const ChannelSet ch = draw_channel_set(experiment_from(config_json).scenario, trial);
            return py::make_tuple(ch.direct, ch.irs_user, ch.ap_irs);
        },
        py::arg("config_json") = "", py::arg("trial") = 0,
        "Returns (H_d, H_r, G) with shapes Nt x Nr, M x Nr and M x Nt.");

    m.def(
        "effective_channel",
        [](const CMatrix &direct, const CMatrix &irs_user, const CMatrix &ap_irs, const RVector &phases) {
            return effective_channel(ChannelSet{direct, irs_user, ap_irs}, phases_from(phases)).matrix;
        },
        py::arg("direct"), py::arg("irs_user"), py::arg("ap_irs"), py::arg("phases"));

    m.def(
        "active_beamformer",
        [](const CMatrix &h, int num_streams) {
            const ActiveBeamformer w = active_beamformer(h, num_streams);
            return py::make_tuple(w.matrix, w.singular_values);
        },
        py::arg("h_eff"), py::arg("num_streams"));

    m.def(
        "spectrum_efficiency",
        [](const CMatrix &h, const CMatrix &w, double power, double noise, int ns) {
            return spectrum_efficiency(h, w, power, noise, ns);
        },
        py::arg("h_eff"), py::arg("w"), py::arg("power_mw"),
          py::arg("noise_mw"), py::arg("num_streams"));

    m.def("coupled_channel", &coupled_channel, py::arg("ap_irs"), py::arg("irs_user"));
    m.def("vectorize_direct", &vectorize_direct, py::arg("direct"));
    m.def("build_r", &build_r, py::arg("coupled"), py::arg("direct_vector"));
    m.def("sdp_upper_bound", &sdp_upper_bound, py::arg("r"));

    m.def(
        "solve_diag_sdp",
        [](const CMatrix &r, int rank, int max_sweeps, double tol, std::uint64_t seed) {
            const SdpSolution s = solve_diag_sdp(r, SdpOptions{rank, max_sweeps, tol, seed});
            py::dict d;
            d["v"] = s.v;
            d["objective"] = s.objective;
            d["iterations"] = s.iterations;
            d["converged"] = s.converged;
            return d;
        },
        py::arg("r"), py::arg("rank") = 0, py::arg("max_sweeps") = 500, py::arg("tol") = 1e-6, py::arg("seed") = 0);

    m.def(
        "iterative_solve",
        [](const CMatrix &r, const RVector &init, int max_sweeps, double tol, std::optional<int> bits) {
            IterativeOptions opts;
            opts.max_sweeps = max_sweeps;
            opts.tol = tol;
            opts.bits = bits;
            return report_dict(iterative_solve(r, phases_from(init), opts));
        },
        py::arg("r"), py::arg("init"), py::arg("max_sweeps") = 5, py::arg("tol") = 1e-4, py::arg("bits") = py::none());

    m.def(
        "sdr_solve",
        [](const CMatrix &r, std::uint64_t seed, int candidates) {
            RandomStream rng(seed);
            SdrOptions opts;
            opts.num_candidates = candidates;
            opts.sdp.seed = seed;
            return report_dict(sdr_solve(r, rng, opts));
        },
        py::arg("r"), py::arg("seed") = 0, py::arg("candidates") = 1000);

    m.def("discrete_phase_set", &discrete_phase_set, py::arg("bits"));
    m.def(
        "quantize_phases",
        [](const RVector &phases, int bits) { return quantize_phases(phases_from(phases), bits).phases(); },
        py::arg("phases"), py::arg("bits"));

    m.def(
        "run_sweep",
        [](const std::string &kind, const std::vector<double> &grid, int trials, const std::vector<std::string> &methods,
           const std::string &config_json, int threads, const std::string &format) {
            const auto k = parse_sweep_kind(kind);
            if (!k || *k == SweepKind::convergence)
                throw std::invalid_argument("unknown sweep kind '" + kind + "'");
            SweepSpec spec;
            spec.kind = *k;
            spec.grid = grid;
            spec.trials = trials;
            spec.base = experiment_from(config_json);
            for (const auto &name : methods)
                spec.methods.push_back(method_from(name));
            SweepTable table;
            {
                py::gil_scoped_release release;
                table = run_sweep(spec, threads);
            }
            return format == "json" ? emit_json(table) : emit_csv(table);
        },
        py::arg("kind"), py::arg("grid"), py::arg("trials") = 100,
        py::arg("methods") = std::vector<std::string>{"iterative", "sdr", "random", "no-irs"},
        py::arg("config_json") = "", py::arg("threads") = 1, py::arg("format") = "csv",
        "Runs a Monte-Carlo sweep and returns the table as CSV (or JSON) text.");

    m.def(
        "convergence_study",
        [](const std::vector<int> &elements, int max_sweeps, int trials, const std::string &config_json,
           int threads) {
            ConvergenceTable table;
            const ExperimentConfig base = experiment_from(config_json);
            {
                py::gil_scoped_release release;
                table = convergence_study(base, elements, max_sweeps, trials, threads);
            }
            py::dict d;
            d["csv"] = emit_csv(table);
            d["sweeps_to_converge"] = table.sweeps_to_converge;
            return d;
        },
        py::arg("elements"), py::arg("max_sweeps") = 10, py::arg("trials") = 100, py::arg("config_json") = "",
        py::arg("threads") = 1);

    m.def(
        "run_validation",
        [](std::uint64_t seed, int instances) {
            py::list out;
            for (const ValidationResult &r : run_validation(seed, instances))
                out.append(py::make_tuple(r.name, r.passed, r.detail));
            return out;
        },
        py::arg("seed") = 1, py::arg("instances") = 20);

    m.attr("__version__") = "0.1.0";
}
