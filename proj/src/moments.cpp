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

#include "spacemimo/moments.hpp"
#include "spacemimo/errors.hpp"
#include "spacemimo/montecarlo.hpp"
#include "spacemimo/quadrature.hpp"
#include "spacemimo/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace spacemimo
{
    namespace
    {
        constexpr std::size_t kChunk = 4096;

        double lens_area(double s)
        {
            const double h = 0.5 * s;
            return 2.0 * std::acos(std::min(1.0, h)) - h * std::sqrt(std::max(0.0, 4.0 - s * s));
        }

        // J_1(x) / x with the removable singularity at 0
        double jinc(double x)
        {
            if (std::abs(x) < 1e-4)
                return 0.5 - x * x / 16.0;
            return std::cyl_bessel_j(1.0, x) / x;
        }

        double f_by_quadrature(double c, int panels)
        {
            // s = 2 - t^2 removes the square-root behaviour of A_lens at s = 2.
            const auto rule = composite_gauss_legendre(16, panels, 0.0, std::numbers::sqrt2);
            double acc = 0.0;
            for (std::size_t k = 0; k < rule.nodes.size(); ++k)
            {
                const double t = rule.nodes[k];
                const double s = 2.0 - t * t;
                const double j = jinc(c * s);
                acc += rule.weights[k] * j * j * lens_area(s) * s * 2.0 * t;
            }
            return 8.0 / std::numbers::pi * acc;
        }

        void uniform_in_unit_disc(rng::Stream &r, double &y, double &z)
        {
            do
            {
                y = r.uniform(-1.0, 1.0);
                z = r.uniform(-1.0, 1.0);
            } while (y * y + z * z > 1.0);
        }

        FEstimate f_by_monte_carlo(double c, std::size_t samples, std::uint64_t seed, Execution exec)
        {
            const std::size_t chunks = (samples + kChunk - 1) / kChunk;
            std::vector<double> sums(chunks), squares(chunks);
            const auto n = static_cast<long long>(chunks);
#pragma omp parallel for schedule(static) if (exec == Execution::Parallel)
            for (long long k = 0; k < n; ++k)
            {
                const auto ku = static_cast<std::size_t>(k);
                rng::Stream r(rng::derive(seed, 0x66, ku));
                const std::size_t count = std::min(kChunk, samples - ku * kChunk);
                double s = 0.0, q = 0.0;
                for (std::size_t i = 0; i < count; ++i)
                {
                    double wy, wz, xy, xz, yy, yz, zy, zz;
                    uniform_in_unit_disc(r, wy, wz);
                    uniform_in_unit_disc(r, xy, xz);
                    uniform_in_unit_disc(r, yy, yz);
                    uniform_in_unit_disc(r, zy, zz);
                    const double v = std::cos(c * ((wy - xy) * (yy - zy) + (wz - xz) * (yz - zz)));
                    s += v;
                    q += v * v;
                }
                sums[ku] = s;
                squares[ku] = q;
            }
            const double N = static_cast<double>(samples);
            const double mean = pairwise_sum(sums) / N;
            const double var = std::max(0.0, (pairwise_sum(squares) - N * mean * mean) / (N - 1.0));
            return {mean, std::sqrt(var / N)};
        }
    } // namespace

    FEstimate f_of_c(double c, FMethod method, std::size_t budget, std::uint64_t seed, double max_rel_error,
                     Execution exec)
    {
        if (!(c > 0.0) || !std::isfinite(c))
            throw InvariantError("f_of_c: c must be > 0");
        if (method == FMethod::BesselQuadrature)
        {
            if (budget < 1)
                throw InvariantError("f_of_c: quadrature budget must be >= 1 panel");
            return {f_by_quadrature(c, static_cast<int>(budget)), 0.0};
        }
        if (budget < 2)
            throw InvariantError("f_of_c: Monte Carlo budget must be >= 2");
        const auto e = f_by_monte_carlo(c, budget, seed, exec);
        if (max_rel_error > 0.0 && e.std_error > max_rel_error * std::abs(e.estimate))
            throw NumericalError("f_of_c", "budget of " + std::to_string(budget) + " samples gives relative error " +
                                               std::to_string(e.std_error / std::abs(e.estimate)) + " > " +
                                               std::to_string(max_rel_error));
        return e;
    }

    double f_quadrature(double c)
    {
        // ~ c oscillations over [0, 2]; 16-point panels, several per oscillation.
        const int panels = std::max(32, static_cast<int>(std::ceil(2.0 * c)));
        return f_of_c(c, FMethod::BesselQuadrature, static_cast<std::size_t>(panels)).estimate;
    }

    double f_upper_bound(double c)
    {
        if (!(c > 0.0))
            throw InvariantError("f_upper_bound: c must be > 0");
        return 64.0 / (9.0 * std::numbers::pi * c);
    }

    double fourth_moment(int M, double f_value)
    {
        if (M < 1)
            throw InvariantError("fourth_moment: M must be >= 1");
        if (!(f_value >= 0.0 && f_value <= 1.0))
            throw InvariantError("fourth_moment: f must lie in [0, 1], got " + std::to_string(f_value));
        const double m = M;
        return 2.0 * m * m - m + m * (m - 1.0) * (m - 1.0) * f_value;
    }

    AssembledBound assembled_lower_bound(int M, double gamma, double g, double area_m2, double lambda_d)
    {
        if (M < 1)
            throw InvariantError("assembled_lower_bound: M must be >= 1");
        const double ratio = area_m2 / lambda_d;
        if (!(ratio >= 1.0 - 1e-12))
            throw InvariantError("assembled_lower_bound: |S|/(lambda d) must be >= 1");
        AssembledBound b;
        b.c = 2.0 * ratio;
        const double m = M;
        const double numer = m * m * m / 4.0 * std::log1p(gamma * g / (2.0 * m * m)) / std::numbers::ln2;
        // The closed form keeps the bound even where it exceeds 1, so it matches the capacity formula.
        const double m4_bound = 2.0 * m * m - m + m * (m - 1.0) * (m - 1.0) * f_upper_bound(b.c);
        b.closed = numer / m4_bound;
        b.tight = numer / fourth_moment(M, std::clamp(f_quadrature(b.c), 0.0, 1.0));
        return b;
    }

    MeanEstimate empirical_fourth_moment(int M, double S_over_ld, std::size_t trials, std::uint64_t seed,
                                         Execution exec)
    {
        if (trials < 100)
            throw InvariantError("empirical_fourth_moment: trials must be >= 100");
        ErgodicScenario s{M, S_over_ld, 1.0};
        s.validate();
        const auto stream = rng::mix64(s.geometry_stream() ^ 0x4D34ULL);
        std::vector<double> xs(trials);
        const auto n = static_cast<long long>(trials);
#pragma omp parallel for schedule(dynamic, 16) if (exec == Execution::Parallel)
        for (long long t = 0; t < n; ++t)
        {
            const auto H = sample_normalized_reduced(M, S_over_ld, trial_seed(seed, stream, static_cast<std::uint64_t>(t)));
            const Eigen::MatrixXcd G = H.entries * H.entries.adjoint();
            xs[static_cast<std::size_t>(t)] = G.squaredNorm() / M;
        }
        return mean_and_std_error(xs);
    }

    MomentReport moment_report(double c, int M, double gamma_g, std::size_t f_trials, std::size_t m4_trials,
                               std::uint64_t seed, Execution exec)
    {
        MomentReport r;
        r.c = c;
        r.M = M;
        const auto f = f_of_c(c, FMethod::MonteCarlo, f_trials, rng::derive(seed, 0xF), 0.0, exec);
        r.f_est = f.estimate;
        r.f_se = f.std_error;
        r.f_bound = f_upper_bound(c);
        r.m4_closed = fourth_moment(M, std::clamp(f_quadrature(c), 0.0, 1.0));
        const auto m4 = empirical_fourth_moment(M, 0.5 * c, m4_trials, rng::derive(seed, 0x4), exec);
        r.m4_emp = m4.mean;
        r.m4_se = m4.std_error;
        if (0.5 * c >= 1.0)
        {
            const auto b = assembled_lower_bound(M, gamma_g, 1.0, 0.5 * c, 1.0);
            r.bound_closed = b.closed;
            r.bound_tight = b.tight;
        }
        else
        {
            r.bound_closed = r.bound_tight = std::numeric_limits<double>::quiet_NaN();
        }
        return r;
    }

    CsvTable to_csv(const std::vector<MomentReport> &rows)
    {
        CsvTable t{"moments",
                   {"c", "M", "f_est", "f_se", "f_bound", "m4_closed", "m4_emp", "m4_se", "bound_closed", "bound_tight"},
                   {}};
        for (const auto &r : rows)
            t.add_row({r.c, static_cast<std::int64_t>(r.M), r.f_est, r.f_se, r.f_bound, r.m4_closed, r.m4_emp, r.m4_se,
                       r.bound_closed, r.bound_tight});
        return t;
    }
} // namespace spacemimo
