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

#include "spacemimo/channel.hpp"
#include "spacemimo/csv.hpp"
#include "spacemimo/numerics.hpp"

#include <complex>
#include <vector>

namespace spacemimo
{
    // Radial integral equation on the unit disc
    //   beta R(r) = int_0^1 J_N(c r r') R(r') r' dr',   c = 2 pi R^2 / (lambda d)
    struct ProlateProblem
    {
        double c = 0.0;
        int max_azimuthal_order = 0;     // hard cap on N; orders stop earlier once negligible
        int radial_modes_per_order = 1;  // kept eigenpairs per order (clamped to the quadrature order)
        int quadrature_order = 64;

        // Defaults sized for c: quadrature max(64, 2c + 32), all radial modes, N up to 2c + 40.
        static ProlateProblem for_c(double c);
        void validate() const;
    };

    struct RadialEigenpair
    {
        int order_N = 0;
        int mode_m = 0;
        double beta = 0.0;
        std::vector<double> radii;   // quadrature nodes r_k
        std::vector<double> samples; // R(r_k), sum_k w_k r_k R(r_k)^2 = 1
    };

    class RadialEigensystem
    {
    public:
        RadialEigensystem(int order_N, double c, std::vector<double> nodes, std::vector<double> weights,
                          std::vector<RadialEigenpair> pairs);

        int order() const noexcept { return order_N_; }
        double c() const noexcept { return c_; }
        const std::vector<RadialEigenpair> &pairs() const noexcept { return pairs_; }
        const std::vector<double> &weights() const noexcept { return weights_; }

        // Off-grid value through the integral equation itself (Nystrom interpolation):
        //   R(r) = (1 / beta) sum_l w_l r_l J_N(c r r_l) R(r_l)
        double evaluate(std::size_t mode, double r) const;

        // Sum of beta^2 over every eigenvalue of the discretized kernel, kept or not.
        double beta_sq_total() const noexcept { return beta_sq_total_; }
        void set_beta_sq_total(double v) noexcept { beta_sq_total_ = v; }

    private:
        int order_N_;
        double c_;
        std::vector<double> nodes_;
        std::vector<double> weights_;
        std::vector<RadialEigenpair> pairs_;
        double beta_sq_total_ = 0.0;
    };

    // Pairs sorted by decreasing |beta|, at most `modes` of them. When check_convergence is set the
    // problem is re-solved with twice the quadrature order and every kept beta above 1e-9 must agree
    // to 1e-6 relative; NumericalError otherwise.
    RadialEigensystem radial_eigensystem(int order_N, double c, int quadrature_order, int modes,
                                         bool check_convergence = true);

    // Largest relative change of the kept betas (|beta| >= floor) between quadrature orders q and 2q.
    double nystrom_self_convergence(int order_N, double c, int quadrature_order, int modes, double floor = 1e-9);

    // One (N, m) mode of the continuous operator; order_N is signed, each N > 0 appears as +N and -N.
    struct OperatorMode
    {
        int order_N = 0;
        int mode_m = 0;
        double beta = 0.0;
        std::complex<double> alpha; // 2 pi i^|N| beta
        double alpha_sq = 0.0;
        double nu_sq = 0.0;         // (L / (lambda d)^2) R^4 |alpha|^2
    };

    struct OperatorSpectrum
    {
        double c = 0.0;
        double loss_factor = 1.0;
        double disc_radius_m = 0.0;
        double lambda_d = 0.0;
        std::vector<OperatorMode> modes;           // non-increasing nu_sq, ties by (|N|, m, sign)
        std::vector<RadialEigensystem> radial;     // indexed by |N|
        EigenSpectrum spectrum;                    // nu_sq values, context OperatorEigen
        bool truncated = false;                    // order cap hit before the tail became negligible
        double alpha_sq_total = 0.0;               // all discrete eigenvalues, expected pi^2
        double nu_sq_total = 0.0;                  // expected L |S|^2 / (lambda d)^2

        // p(u) = R_{|N|,m}(|u| / R) e^{i N theta} / (R sqrt(2 pi)), unit L2 norm on the disc of radius R.
        std::complex<double> eigenfunction(std::size_t mode, const Point2 &u) const;
    };

    // Orders N = 0, 1, ... until the leading |beta_N| drops below 1e-6 |beta_0| (or the cap).
    // Requires c == 2 pi R^2 / (lambda d) to 1e-9 relative; InvariantError otherwise.
    OperatorSpectrum assemble_operator_spectrum(const ProlateProblem &problem, double loss_factor,
                                                double disc_radius_m, double wavelength_m, double range_m,
                                                Execution exec = Execution::Parallel);

    // Modes with |nu|^2 >= L / 2.
    std::size_t significant_mode_count(const EigenSpectrum &spectrum, double loss_factor);

    // rank,order_N,mode_m,alpha_sq,nu_sq
    CsvTable to_csv(const OperatorSpectrum &s);
} // namespace spacemimo
