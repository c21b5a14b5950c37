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

#include <vector>

namespace spacemimo
{
    // Number of significant modes of a disc of area |S| at range-wavelength product lambda*d:
    // ceil(|S|^2 / (lambda d)^2).
    long long degrees_of_freedom(double area_m2, double lambda_d);

    struct CapacityInputs
    {
        double gamma = 0.0;     // input SNR
        double g = 0.0;         // channel gain
        int M = 1;              // streams = antennas per end
        long long Mscript = 1;  // degrees of freedom
        double area_m2 = 0.0;   // |S|
        double lambda_d = 0.0;  // m^2

        // Mscript derived from the geometry.
        static CapacityInputs from_geometry(double gamma, double g, int M, double area_m2, double lambda_d);
        // Normalized form used by scans: only the product gamma*g and |S|/(lambda d) matter.
        static CapacityInputs normalized(double gamma_g, int M, double area_over_lambda_d);

        double gamma_g() const noexcept { return gamma * g; }
        double area_over_lambda_d() const noexcept { return area_m2 / lambda_d; }
        void validate() const;
    };

    // sum_i log2(1 + gamma g / M^3 * s_i), s_i the squared singular values. Throws on size mismatch.
    double uniform_spectral_efficiency(const EigenSpectrum &spectrum, double gamma, double g, int M);

    struct WaterfillingResult
    {
        double xi = 0.0;
        int active_modes = 0;        // K
        double water_level = 0.0;    // mu
        std::vector<double> powers;  // per mode, sums to gamma g / M^2
    };

    // Waterfilling over the eigenmodes with the total budget gamma g / M^2 (the same budget the uniform
    // allocation spends). K is the largest feasible active set, found by an upward scan.
    WaterfillingResult waterfilling(const EigenSpectrum &spectrum, double gamma, double g, int M);
    double waterfilling_spectral_efficiency(const EigenSpectrum &spectrum, double gamma, double g, int M);

    // min{M, Mscript} log2(1 + gamma g / (M min{M, Mscript}))
    double spectral_efficiency_upper_bound(const CapacityInputs &in);

    // Expected uniform spectral efficiency lower bound for i.i.d. uniform nodes on the disc:
    //   (M/4) log2(1 + gamma g / (2 M^2)) / [ (2 - 1/M) + (32 / 9 pi) (M - 2 + 1/M) / (|S| / lambda d) ]
    // Requires |S| / (lambda d) >= 1.
    double expected_spectral_efficiency_lower_bound(const CapacityInputs &in);

    // Achievable (not merely bounding) value with prolate-matched distributed antennas; same closed form as
    // the upper bound.
    double deterministic_capacity(const CapacityInputs &in);

    // Root of ln(1 + t) = 2t / (1 + t), the per-stream SNR gamma g / x^2 at which x log2(1 + gamma g / x^2)
    // is stationary in x.
    double stationary_snr_constant();

    struct StreamCountDesign
    {
        double gamma_g = 0.0;
        double t_star = 0.0;
        double x_opt = 0.0;
        int M_l = 1;
        int M_u = 1;
        int M_opt = 1;
        double xi = 0.0;                 // max over {M_l, M_u}, b/s/Hz
        double xi_continuous = 0.0;      // objective at x_opt
        double x_opt_over_sqrt_gg = 0.0;
        double xi_over_sqrt_gg_bits = 0.0;
        double xi_over_sqrt_gg_nats = 0.0;
    };

    // Printed constants, reported alongside the root-found ones for comparison only.
    inline constexpr double kPrintedStationaryConstant = 3.9125;
    inline constexpr double kPrintedCapacityCoefficient = 0.8053;

    // x log2(1 + gamma g / x^2)
    double stream_objective(double x, double gamma_g);

    StreamCountDesign optimal_stream_count(double gamma, double g);

    // sqrt(M) * lambda * d, m^2
    double required_array_area(int M, double wavelength_m, double range_m);
} // namespace spacemimo
