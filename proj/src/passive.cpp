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

#include "irsmimo/passive.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace irsmimo
{

namespace
{

constexpr std::array<std::pair<Method, std::string_view>, 6> kMethodNames{{
    {Method::sdr, "sdr"},
    {Method::iterative, "iterative"},
    {Method::sdr_quantized, "sdr-quantized"},
    {Method::iterative_quantized, "iterative-quantized"},
    {Method::random, "random"},
    {Method::no_irs, "no-irs"},
}};

double abs_scale(const CMatrix &r)
{
    return r.size() == 0 ? 0.0 : r.cwiseAbs().maxCoeff();
}

void require_square(const CMatrix &r, const char *what)
{
    if (r.rows() != r.cols() || r.rows() < 1)
        throw std::invalid_argument(std::string(what) + ": R must be square and non-empty");
}

} // namespace

std::string_view to_string(Method m) noexcept
{
    for (const auto &[method, name] : kMethodNames)
        if (method == m)
            return name;
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) noexcept
{
    for (const auto &[method, n] : kMethodNames)
        if (n == name)
            return method;
    return std::nullopt;
}

const std::vector<Method> &all_methods()
{
    static const std::vector<Method> methods = [] {
        std::vector<Method> out;
        for (const auto &entry : kMethodNames)
            out.push_back(entry.first);
        return out;
    }();
    return methods;
}

double wrap_phase(double phase)
{
    double w = std::remainder(phase, 2.0 * kPi); // [-pi, pi]
    if (w <= -kPi)
        w += 2.0 * kPi;
    return w;
}

double element_update(const CMatrix &r, const CVector &x, int m)
{
    const Eigen::Index n = r.rows();
    if (m < 0 || m >= n - 1 || x.size() != n)
        throw std::invalid_argument("element_update: index or vector length out of range");
    Complex s{0.0, 0.0};
    for (Eigen::Index i = 0; i < n; ++i)
        if (i != m)
            s += std::conj(x(i)) * r(i, m);
    if (std::abs(s) < 1e-14 * std::max(abs_scale(r), 1e-300))
        return std::arg(x(m));
    return std::arg(std::conj(s));
}

SolverReport iterative_solve(const CMatrix &r, const PhaseVector &theta_init, const IterativeOptions &opts)
{
    require_square(r, "iterative_solve");
    const int m = static_cast<int>(r.rows()) - 1;
    if (theta_init.size() != m)
        throw std::invalid_argument("iterative_solve: theta_init length must be M");
    if (opts.max_sweeps < 1)
        throw std::invalid_argument("iterative_solve: max_sweeps must be >= 1");
    if (opts.bits && *opts.bits < 1)
        throw std::invalid_argument("iterative_solve: bits must be >= 1");

    SolverReport report;
    report.method = opts.bits ? Method::iterative_quantized : Method::iterative;
    report.upper_bound = sdp_upper_bound(r);

    RVector phases = theta_init.phases();
    CVector x = theta_init.homogenized();
    const double zero_sum = 1e-14 * std::max(abs_scale(r), 1e-300);

    double previous = homogenized_objective(r, x);
    report.initial_objective = previous;
    bool first_gain = true;

    for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep)
    {
        for (int k = 0; k < m; ++k)
        {
            Complex s{0.0, 0.0};
            for (int i = 0; i <= m; ++i)
                if (i != k)
                    s += std::conj(x(i)) * r(i, k);
            report.multiply_adds += static_cast<std::uint64_t>(m);

            if (std::abs(s) < zero_sum)
                continue;
            double next = -std::arg(s);
            if (opts.bits)
                next = quantize_phase(next, *opts.bits);
            const Complex updated = std::polar(1.0, next);
            // Only the term 2 Re(x_k s) depends on x_k.
            const double gain = 2.0 * (updated * s).real() - 2.0 * (x(k) * s).real();
            if (first_gain || gain < report.min_update_gain)
            {
                report.min_update_gain = gain;
                first_gain = false;
            }
            phases(k) = next;
            x(k) = updated;
        }
        const double current = homogenized_objective(r, x);
        report.objective_trace.push_back(current);
        report.sweeps_used = sweep;
        const double change = std::abs(current - previous) / std::max(std::abs(previous), 1e-300);
        previous = current;
        if (opts.early_exit && change < opts.tol)
            break;
    }

    report.theta = PhaseVector::from_phases(std::move(phases), opts.bits);
    report.final_objective = previous;
    return report;
}

SolverReport iterative_quantized_solve(const CMatrix &r, int max_sweeps, std::optional<int> bits,
                                       const PhaseVector &theta_init, double tol)
{
    IterativeOptions opts;
    opts.max_sweeps = max_sweeps;
    opts.tol = tol;
    opts.bits = bits;
    SolverReport report = iterative_solve(r, theta_init, opts);
    report.method = Method::iterative_quantized;
    return report;
}

ExtractedPhases extract_phases(const CVector &x)
{
    if (x.size() < 2)
        throw std::invalid_argument("extract_phases: need at least M+1 = 2 entries");
    const Eigen::Index m = x.size() - 1;
    ExtractedPhases out;
    const double scale = x.cwiseAbs().maxCoeff();
    double reference = 0.0;
    if (std::abs(x(m)) < 1e-14 * std::max(scale, 1e-300))
        out.degenerate_reference = true;
    else
        reference = std::arg(x(m));

    RVector phases(m);
    for (Eigen::Index i = 0; i < m; ++i)
        phases(i) = wrap_phase(std::arg(x(i)) - reference);
    out.theta = PhaseVector::from_phases(std::move(phases));
    return out;
}

RandomizationResult gaussian_randomization(const CMatrix &r, const CMatrix &v, RandomStream &rng, int num_candidates)
{
    require_square(r, "gaussian_randomization");
    if (v.rows() != r.rows() || v.cols() != r.cols())
        throw std::invalid_argument("gaussian_randomization: V and R shapes differ");
    if (num_candidates < 1)
        throw std::invalid_argument("gaussian_randomization: num_candidates must be >= 1");

    Eigen::SelfAdjointEigenSolver<CMatrix> eig(v);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("gaussian_randomization: eigendecomposition failed");
    const RVector &lambda = eig.eigenvalues();
    const double lambda_max = std::max(lambda.maxCoeff(), 0.0);

    // Keep eigenpairs above the numerical-rank floor; the rest are rounding noise
    // from the eigensolver and contribute nothing to U S^{1/2} r.
    const double floor = 1e-12 * lambda_max;
    std::vector<Eigen::Index> kept;
    for (Eigen::Index i = 0; i < lambda.size(); ++i)
    {
        if (lambda(i) < -1e-8 * std::max(lambda_max, 1e-300))
            throw std::domain_error("gaussian_randomization: V is not positive semidefinite");
        if (lambda(i) > floor)
            kept.push_back(i);
    }
    const Eigen::Index n = r.rows();
    CMatrix factor(n, static_cast<Eigen::Index>(kept.size()));
    for (std::size_t c = 0; c < kept.size(); ++c)
        factor.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors().col(kept[c]) * std::sqrt(lambda(kept[c]));

    RandomizationResult out;
    out.candidate_objectives.reserve(static_cast<std::size_t>(num_candidates));
    for (int c = 0; c < num_candidates; ++c)
    {
        CVector candidate = factor.cols() > 0 ? CVector(factor * rng.cscg_vector(factor.cols())) : CVector::Ones(n);
        const double score = homogenized_objective(r, extract_phases(candidate).theta.homogenized());
        out.candidate_objectives.push_back(score);
        if (c == 0 || score > out.objective)
        {
            out.objective = score;
            out.candidate = std::move(candidate);
        }
    }
    return out;
}

SolverReport sdr_solve(const CMatrix &r, RandomStream &rng, const SdrOptions &opts)
{
    require_square(r, "sdr_solve");
    SolverReport report;
    report.method = Method::sdr;
    report.upper_bound = sdp_upper_bound(r);

    const SdpSolution sdp = solve_diag_sdp(r, opts.sdp);
    report.sdp_objective = sdp.objective;
    report.sweeps_used = sdp.iterations;

    const RandomizationResult best = gaussian_randomization(r, sdp.v, rng, opts.num_candidates);
    ExtractedPhases extracted = extract_phases(best.candidate);
    report.theta = std::move(extracted.theta);
    report.degenerate_reference = extracted.degenerate_reference;
    report.final_objective = homogenized_objective(r, report.theta.homogenized());
    report.initial_objective = report.final_objective;
    report.objective_trace.push_back(report.final_objective);
    return report;
}

RVector discrete_phase_set(int bits)
{
    if (bits < 1 || bits > 30)
        throw std::invalid_argument("discrete_phase_set: bits must be in [1, 30]");
    const long count = 1L << bits;
    const double step = 2.0 * kPi / static_cast<double>(count);
    RVector out(count);
    for (long k = 1; k <= count; ++k)
        out(k - 1) = -kPi + step * static_cast<double>(k);
    out(count - 1) = kPi;
    return out;
}

double quantize_phase(double phase, int bits)
{
    if (bits < 1)
        throw std::invalid_argument("quantize_phase: bits must be >= 1");
    const double levels = std::ldexp(1.0, bits);
    const double step = 2.0 * kPi / levels;
    const double wrapped = wrap_phase(phase);
    const double t = (wrapped + kPi) / step;
    const double lo = std::floor(t);

    const auto representative = [&](double k) {
        if (k <= 0.0 || k >= levels)
            return kPi; // k = 0 and k = 2^B are the same point
        return -kPi + step * k;
    };
    const double a = representative(lo);
    const double b = representative(lo + 1.0);
    const double da = std::abs(wrap_phase(wrapped - a));
    const double db = std::abs(wrap_phase(wrapped - b));
    if (std::abs(da - db) <= 1e-12 * step)
        return std::min(a, b);
    return da < db ? a : b;
}

PhaseVector quantize_phases(const PhaseVector &theta, int bits)
{
    RVector q(theta.size());
    for (int i = 0; i < theta.size(); ++i)
        q(i) = quantize_phase(theta.phases()(i), bits);
    return PhaseVector::from_phases(std::move(q), bits);
}

PhaseVector random_phases(int m, RandomStream &rng)
{
    if (m < 1)
        throw std::invalid_argument("random_phases: M must be >= 1");
    RVector phases(m);
    for (int i = 0; i < m; ++i)
        phases(i) = rng.uniform_left_open(-kPi, kPi);
    return PhaseVector::from_phases(std::move(phases));
}

EffectiveChannel no_irs_baseline(const ChannelSet &channels)
{
    channels.validate();
    EffectiveChannel out;
    out.matrix = channels.direct.adjoint();
    out.components = channels;
    return out;
}

} // namespace irsmimo
