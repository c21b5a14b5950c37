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

#pragma once

#include "spacemimo/csv.hpp"
#include "spacemimo/numerics.hpp"

#include <cstdint>
#include <vector>

namespace spacemimo
{
    // f(c) = E over w, x, y, z i.i.d. uniform on the unit disc of cos(c <w - x, y - z>)
    //      = (8 / pi) int_0^2 [J_1(c s) / (c s)]^2 A_lens(s) s ds
    // with A_lens(s) = 2 acos(s/2) - (s/2) sqrt(4 - s^2) the overlap of two unit discs at distance s.
    enum class FMethod
    {
        BesselQuadrature,
        MonteCarlo
    };

    struct FEstimate
    {
        double estimate = 0.0;
        double std_error = 0.0; // 0 for quadrature
    };

    // budget: quadrature panels (BesselQuadrature) or 4-tuples (MonteCarlo). A positive max_rel_error makes
    // the Monte Carlo path throw NumericalError when se / |estimate| exceeds it.
    FEstimate f_of_c(double c, FMethod method, std::size_t budget, std::uint64_t seed = 0, double max_rel_error = 0.0,
                     Execution exec = Execution::Parallel);

    // Deterministic quadrature at a budget that resolves c up to a few hundred.
    double f_quadrature(double c);

    // 64 / (9 pi c); exceeds 1 (and is then vacuous) for c < 64 / (9 pi)
    double f_upper_bound(double c);

    // E|v|^4 = 2M^2 - M + M (M - 1)^2 f for a randomly selected singular value v of the reduced matrix.
    double fourth_moment(int M, double f_value);

    struct AssembledBound
    {
        double closed = 0.0; // f replaced by its upper bound
        double tight = 0.0;  // f from quadrature
        double c = 0.0;      // 2 |S| / (lambda d)
    };

    // (M^3 / 4) log2(1 + gamma g / (2 M^2)) / E|v|^4, f at c = 2 |S| / (lambda d); requires |S| / (lambda d) >= 1.
    AssembledBound assembled_lower_bound(int M, double gamma, double g, double area_m2, double lambda_d);

    // Mean and standard error of (1/M) ||H H^*||_F^2 over uniform disc clusters (normalized units).
    MeanEstimate empirical_fourth_moment(int M, double S_over_ld, std::size_t trials, std::uint64_t seed,
                                         Execution exec = Execution::Parallel);

    struct MomentReport
    {
        double c = 0.0;
        int M = 1;
        double f_est = 0.0;
        double f_se = 0.0;
        double f_bound = 0.0;
        double m4_closed = 0.0; // closed form with numeric f
        double m4_emp = 0.0;
        double m4_se = 0.0;
        double bound_closed = 0.0;
        double bound_tight = 0.0;
    };

    // One row per (c, M): f by Monte Carlo with f_trials 4-tuples, empirical moment with m4_trials draws at
    // |S| / (lambda d) = c / 2, bounds at gamma_g.
    MomentReport moment_report(double c, int M, double gamma_g, std::size_t f_trials, std::size_t m4_trials,
                               std::uint64_t seed, Execution exec = Execution::Parallel);

    // c,M,f_est,f_se,f_bound,m4_closed,m4_emp,m4_se,bound_closed,bound_tight
    CsvTable to_csv(const std::vector<MomentReport> &rows);
} // namespace spacemimo
