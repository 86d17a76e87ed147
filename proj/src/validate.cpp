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

#include "irsmimo/validate.hpp"
#include "irsmimo/effective_channel.hpp"
#include "irsmimo/passive.hpp"
#include "irsmimo/qcqp.hpp"
#include "irsmimo/sdp.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace irsmimo
{

namespace
{

ChannelSet random_channels(RandomStream &rng, int nt, int nr, int m)
{
    return {rng.cscg_matrix(nt, nr), rng.cscg_matrix(m, nr), rng.cscg_matrix(m, nt)};
}

ValidationResult check(const std::string &name, int instances, const std::function<double(int)> &worst_of,
                       double limit)
{
    double worst = 0.0;
    for (int i = 0; i < instances; ++i)
        worst = std::max(worst, worst_of(i));
    std::ostringstream d;
    d << "worst " << worst << " (limit " << limit << ")";
    return {name, worst <= limit, d.str()};
}

} // namespace

std::vector<ValidationResult> run_validation(std::uint64_t seed, int instances)
{
    std::vector<ValidationResult> out;
    RandomStream rng(seed);

    out.push_back(check("steering vectors have unit modulus", instances, [&](int) {
        UpaGeometry g{1 + static_cast<int>(rng.uniform() * 4), 1 + static_cast<int>(rng.uniform() * 4), 0.5};
        const CVector a = steering_vector(g, rng.uniform_left_open(-kPi, kPi), rng.uniform_left_open(-kPi / 2, kPi / 2));
        return (a.cwiseAbs().array() - 1.0).abs().maxCoeff();
    }, 1e-12));

    out.push_back(check("LoS component is rank one", instances, [&](int) {
        const CMatrix los = los_component({3, 2, 0.5}, {2, 2, 0.5}, rng.uniform_left_open(-kPi, kPi), 0.3,
                                          rng.uniform_left_open(-kPi, kPi), -0.7);
        const RVector s = Eigen::JacobiSVD<CMatrix>(los).singularValues();
        return s(1) / s(0);
    }, 1e-10));

    out.push_back(check("trace identity ||H W||_F^2 = ||H||_F^2", instances, [&](int) {
        const CMatrix h = rng.cscg_matrix(2, 4);
        const ActiveBeamformer w = active_beamformer(h, 2);
        return std::abs((h * w.matrix).squaredNorm() - h.squaredNorm()) / h.squaredNorm();
    }, 1e-9));

    out.push_back(check("QCQP reduction identity", instances, [&](int) {
        const ChannelSet ch = random_channels(rng, 3, 2, 5);
        const QcqpData data = make_qcqp(ch);
        const PhaseVector theta = random_phases(5, rng);
        const double f = frobenius_objective(effective_channel(ch, theta));
        return std::abs(qcqp_objective(data, theta) + data.constant_term - f) / f;
    }, 1e-9));

    out.push_back(check("homogenized form equals QCQP objective", instances, [&](int) {
        const ChannelSet ch = random_channels(rng, 2, 2, 4);
        const QcqpData data = make_qcqp(ch);
        const PhaseVector theta = random_phases(4, rng);
        const double a = homogenized_objective(data.r, theta.homogenized());
        const double b = qcqp_objective(data, theta);
        return std::abs(a - b) / std::max(std::abs(b), 1.0);
    }, 1e-10));

    out.push_back(check("iterative ascent is monotone and bounded", instances, [&](int) {
        const ChannelSet ch = random_channels(rng, 2, 2, 6);
        const CMatrix r = make_qcqp(ch).r;
        IterativeOptions opts;
        opts.max_sweeps = 10;
        opts.early_exit = false;
        const SolverReport rep = iterative_solve(r, random_phases(6, rng), opts);
        double violation = std::max(0.0, -rep.min_update_gain) / std::max(rep.upper_bound, 1.0);
        violation = std::max(violation, (rep.final_objective - rep.upper_bound) / std::abs(rep.upper_bound));
        return std::max(violation, 0.0);
    }, 1e-9));

    out.push_back(check("SDP iterate is feasible and dominates rounding", instances, [&](int i) {
        const ChannelSet ch = random_channels(rng, 2, 2, 4);
        const CMatrix r = make_qcqp(ch).r;
        SdpOptions opts;
        opts.seed = seed + static_cast<std::uint64_t>(i);
        const SdpSolution sdp = solve_diag_sdp(r, opts);
        double worst = (sdp.v.diagonal().array() - 1.0).abs().maxCoeff();
        const double lmin = Eigen::SelfAdjointEigenSolver<CMatrix>(sdp.v).eigenvalues().minCoeff();
        worst = std::max(worst, -lmin / sdp.v.norm());
        IterativeOptions it;
        it.max_sweeps = 20;
        const double local = iterative_solve(r, PhaseVector::zeros(4), it).final_objective;
        worst = std::max(worst, (local - sdp.objective) / std::abs(sdp.objective) - 1e-6);
        worst = std::max(worst, (sdp.objective - sdp_upper_bound(r)) / std::abs(sdp.objective));
        return std::max(worst, 0.0);
    }, 1e-8));

    out.push_back(check("quantized phases lie in the discrete set", instances, [&](int) {
        const int bits = 1 + static_cast<int>(rng.uniform() * 4);
        const PhaseVector q = quantize_phases(random_phases(16, rng), bits);
        const RVector f = discrete_phase_set(bits);
        double worst = 0.0;
        for (int k = 0; k < q.size(); ++k)
            worst = std::max(worst, (f.array() - q.phases()(k)).abs().minCoeff());
        return worst;
    }, 1e-12));

    return out;
}

} // namespace irsmimo
