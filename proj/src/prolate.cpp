// SPDX-License-Identifier: Apache-2.0
//
// spacemimo: capacity analysis for long-range free-space MIMO links
// Copyright (C) 2026 The spacemimo authors
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

#include "spacemimo/prolate.hpp"
#include "spacemimo/errors.hpp"
#include "spacemimo/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>

namespace spacemimo
{
    namespace
    {
        constexpr double kOrderCutoff = 1e-6; // leading |beta_N| relative to |beta_0|
        constexpr int kOrderBatch = 8;

        RadialEigensystem solve_order(int order_N, double c, int q, int modes)
        {
            const auto rule = gauss_legendre(q, 0.0, 1.0);
            const auto n = static_cast<Eigen::Index>(q);
            Eigen::VectorXd s(n);
            for (Eigen::Index k = 0; k < n; ++k)
                s(k) = std::sqrt(rule.weights[static_cast<std::size_t>(k)] * rule.nodes[static_cast<std::size_t>(k)]);

            Eigen::MatrixXd K(n, n);
            for (Eigen::Index k = 0; k < n; ++k)
                for (Eigen::Index l = 0; l <= k; ++l)
                {
                    const double rk = rule.nodes[static_cast<std::size_t>(k)];
                    const double rl = rule.nodes[static_cast<std::size_t>(l)];
                    K(k, l) = K(l, k) = s(k) * std::cyl_bessel_j(static_cast<double>(order_N), c * rk * rl) * s(l);
                }

            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
            if (es.info() != Eigen::Success)
                throw NumericalError("radial_eigensystem", "eigen-solver failed for N = " + std::to_string(order_N));

            const auto &ev = es.eigenvalues();
            std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
            std::iota(idx.begin(), idx.end(), Eigen::Index{0});
            std::stable_sort(idx.begin(), idx.end(),
                             [&](Eigen::Index a, Eigen::Index b) { return std::abs(ev(a)) > std::abs(ev(b)); });

            double total = 0.0;
            for (Eigen::Index k = 0; k < n; ++k)
                total += ev(k) * ev(k);

            const int keep = std::min(modes, q);
            std::vector<RadialEigenpair> pairs;
            pairs.reserve(static_cast<std::size_t>(keep));
            for (int m = 0; m < keep; ++m)
            {
                const Eigen::Index j = idx[static_cast<std::size_t>(m)];
                Eigen::VectorXd e = es.eigenvectors().col(j);
                Eigen::Index big = 0;
                e.cwiseAbs().maxCoeff(&big);
                if (e(big) < 0.0)
                    e = -e;
                RadialEigenpair p;
                p.order_N = order_N;
                p.mode_m = m;
                p.beta = ev(j);
                p.radii = rule.nodes;
                p.samples.resize(static_cast<std::size_t>(n));
                for (Eigen::Index k = 0; k < n; ++k)
                    p.samples[static_cast<std::size_t>(k)] = e(k) / s(k);
                pairs.push_back(std::move(p));
            }
            RadialEigensystem sys(order_N, c, rule.nodes, rule.weights, std::move(pairs));
            sys.set_beta_sq_total(total);
            return sys;
        }

        double max_relative_change(const RadialEigensystem &a, const RadialEigensystem &b, double floor)
        {
            double worst = 0.0;
            const std::size_t n = std::min(a.pairs().size(), b.pairs().size());
            for (std::size_t m = 0; m < n; ++m)
            {
                const double x = a.pairs()[m].beta, y = b.pairs()[m].beta;
                if (std::abs(x) < floor && std::abs(y) < floor)
                    continue;
                worst = std::max(worst, std::abs(x - y) / std::max(std::abs(x), std::abs(y)));
            }
            return worst;
        }

        double leading_abs_beta(const RadialEigensystem &s)
        {
            return s.pairs().empty() ? 0.0 : std::abs(s.pairs().front().beta);
        }
    } // namespace

    ProlateProblem ProlateProblem::for_c(double c)
    {
        ProlateProblem p;
        p.c = c;
        p.quadrature_order = std::max(64, static_cast<int>(std::ceil(2.0 * c)) + 32);
        p.radial_modes_per_order = p.quadrature_order;
        p.max_azimuthal_order = static_cast<int>(std::ceil(2.0 * c)) + 40;
        return p;
    }

    void ProlateProblem::validate() const
    {
        if (!(c > 0.0) || !std::isfinite(c))
            throw InvariantError("ProlateProblem: c must be > 0");
        if (max_azimuthal_order < 0 || radial_modes_per_order < 1 || quadrature_order < 1)
            throw InvariantError("ProlateProblem: truncations must be >= 1");
        if (quadrature_order < std::max(16.0, 2.0 * c))
            throw InvariantError("ProlateProblem: quadrature_order " + std::to_string(quadrature_order) +
                                 " does not resolve the kernel (need >= max(16, 2c))");
    }

    RadialEigensystem::RadialEigensystem(int order_N, double c, std::vector<double> nodes, std::vector<double> weights,
                                         std::vector<RadialEigenpair> pairs)
        : order_N_(order_N), c_(c), nodes_(std::move(nodes)), weights_(std::move(weights)), pairs_(std::move(pairs))
    {
    }

    double RadialEigensystem::evaluate(std::size_t mode, double r) const
    {
        const auto &p = pairs_.at(mode);
        if (p.beta == 0.0)
            throw NumericalError("RadialEigensystem::evaluate", "zero eigenvalue cannot be interpolated");
        double acc = 0.0;
        for (std::size_t l = 0; l < nodes_.size(); ++l)
            acc += weights_[l] * nodes_[l] * std::cyl_bessel_j(static_cast<double>(order_N_), c_ * r * nodes_[l]) *
                   p.samples[l];
        return acc / p.beta;
    }

    RadialEigensystem radial_eigensystem(int order_N, double c, int quadrature_order, int modes,
                                         bool check_convergence)
    {
        if (order_N < 0 || !(c > 0.0) || quadrature_order < 1 || modes < 1)
            throw InvariantError("radial_eigensystem: bad arguments");
        auto sys = solve_order(order_N, c, quadrature_order, modes);
        if (check_convergence)
        {
            const auto fine = solve_order(order_N, c, 2 * quadrature_order, modes);
            const double change = max_relative_change(sys, fine, 1e-9);
            if (change >= 1e-6)
                throw NumericalError("radial_eigensystem", "unresolved kernel: beta changes by " +
                                                               std::to_string(change) + " on quadrature doubling (N = " +
                                                               std::to_string(order_N) + ")");
        }
        return sys;
    }

    double nystrom_self_convergence(int order_N, double c, int quadrature_order, int modes, double floor)
    {
        const auto a = solve_order(order_N, c, quadrature_order, modes);
        const auto b = solve_order(order_N, c, 2 * quadrature_order, modes);
        return max_relative_change(a, b, floor);
    }

    std::complex<double> OperatorSpectrum::eigenfunction(std::size_t mode, const Point2 &u) const
    {
        const auto &md = modes.at(mode);
        const double rho = norm(u);
        const double t = rho / disc_radius_m;
        const auto &sys = radial.at(static_cast<std::size_t>(std::abs(md.order_N)));
        const double radial_value = sys.evaluate(static_cast<std::size_t>(md.mode_m), t);
        const double theta = std::atan2(u.z, u.y);
        const double scale = 1.0 / (disc_radius_m * std::sqrt(2.0 * std::numbers::pi));
        return radial_value * scale * std::polar(1.0, md.order_N * theta);
    }

    OperatorSpectrum assemble_operator_spectrum(const ProlateProblem &problem, double loss_factor, double disc_radius_m,
                                                double wavelength_m, double range_m, Execution exec)
    {
        problem.validate();
        if (!(disc_radius_m > 0.0) || !(wavelength_m > 0.0) || !(range_m > 0.0) || !(loss_factor > 0.0))
            throw InvariantError("assemble_operator_spectrum: geometry must be positive");
        const double lambda_d = wavelength_m * range_m;
        const double c_geom = 2.0 * std::numbers::pi * disc_radius_m * disc_radius_m / lambda_d;
        if (std::abs(c_geom - problem.c) > 1e-9 * c_geom)
            throw InvariantError("assemble_operator_spectrum: inconsistent c (" + std::to_string(problem.c) +
                                 " vs 2 pi R^2 / (lambda d) = " + std::to_string(c_geom) + ")");

        OperatorSpectrum out;
        out.c = problem.c;
        out.loss_factor = loss_factor;
        out.disc_radius_m = disc_radius_m;
        out.lambda_d = lambda_d;

        const int q = problem.quadrature_order, keep = problem.radial_modes_per_order;
        out.radial.push_back(radial_eigensystem(0, problem.c, q, keep));
        const double lead0 = leading_abs_beta(out.radial.front());

        // Orders are solved in batches; the batch is parallel, the merge keeps only the prefix of
        // orders before the first negligible one, so the result is independent of scheduling.
        bool done = false;
        int next = 1;
        while (!done && next <= problem.max_azimuthal_order)
        {
            const int hi = std::min(problem.max_azimuthal_order, next + kOrderBatch - 1);
            const int count = hi - next + 1;
            std::vector<std::optional<RadialEigensystem>> batch(static_cast<std::size_t>(count));
            std::vector<std::string> failures(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic) if (exec == Execution::Parallel)
            for (int i = 0; i < count; ++i)
            {
                try
                {
                    batch[static_cast<std::size_t>(i)].emplace(radial_eigensystem(next + i, problem.c, q, keep));
                }
                catch (const std::exception &e)
                {
                    failures[static_cast<std::size_t>(i)] = e.what();
                }
            }
            for (int i = 0; i < count && !done; ++i)
            {
                if (!failures[static_cast<std::size_t>(i)].empty())
                    throw NumericalError("assemble_operator_spectrum", failures[static_cast<std::size_t>(i)]);
                auto &sys = *batch[static_cast<std::size_t>(i)];
                if (leading_abs_beta(sys) < kOrderCutoff * lead0)
                    done = true;
                else
                    out.radial.push_back(std::move(sys));
            }
            next = hi + 1;
        }
        out.truncated = !done;

        const double R2 = disc_radius_m * disc_radius_m;
        const double nu_scale = loss_factor / (lambda_d * lambda_d) * R2 * R2;
        const double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
        for (const auto &sys : out.radial)
        {
            const int N = sys.order();
            const std::complex<double> iN = std::pow(std::complex<double>(0.0, 1.0), N);
            for (const auto &p : sys.pairs())
            {
                for (int sign : {+1, -1})
                {
                    if (N == 0 && sign < 0)
                        continue;
                    OperatorMode md;
                    md.order_N = sign * N;
                    md.mode_m = p.mode_m;
                    md.beta = p.beta;
                    md.alpha = 2.0 * std::numbers::pi * iN * p.beta;
                    md.alpha_sq = four_pi_sq * p.beta * p.beta;
                    md.nu_sq = nu_scale * md.alpha_sq;
                    out.modes.push_back(md);
                }
            }
            out.alpha_sq_total += (N == 0 ? 1.0 : 2.0) * four_pi_sq * sys.beta_sq_total();
        }
        out.nu_sq_total = nu_scale * out.alpha_sq_total;

        std::stable_sort(out.modes.begin(), out.modes.end(), [](const OperatorMode &a, const OperatorMode &b) {
            if (a.nu_sq != b.nu_sq)
                return a.nu_sq > b.nu_sq;
            if (std::abs(a.order_N) != std::abs(b.order_N))
                return std::abs(a.order_N) < std::abs(b.order_N);
            if (a.mode_m != b.mode_m)
                return a.mode_m < b.mode_m;
            return a.order_N > b.order_N;
        });
        std::vector<double> values;
        values.reserve(out.modes.size());
        for (const auto &md : out.modes)
            values.push_back(md.nu_sq);
        out.spectrum = EigenSpectrum(std::move(values), SpectrumContext::OperatorEigen);
        return out;
    }

    std::size_t significant_mode_count(const EigenSpectrum &spectrum, double loss_factor)
    {
        return static_cast<std::size_t>(std::count_if(spectrum.values().begin(), spectrum.values().end(),
                                                      [&](double v) { return v >= 0.5 * loss_factor; }));
    }

    CsvTable to_csv(const OperatorSpectrum &s)
    {
        CsvTable t{"operator_spectrum", {"rank", "order_N", "mode_m", "alpha_sq", "nu_sq"}, {}};
        for (std::size_t i = 0; i < s.modes.size(); ++i)
        {
            const auto &m = s.modes[i];
            t.add_row({static_cast<std::int64_t>(i + 1), static_cast<std::int64_t>(m.order_N),
                       static_cast<std::int64_t>(m.mode_m), m.alpha_sq, m.nu_sq});
        }
        return t;
    }
} // namespace spacemimo
