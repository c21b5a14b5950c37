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

#include "spacemimo/capacity.hpp"
#include "spacemimo/errors.hpp"
#include "spacemimo/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace spacemimo
{
    namespace
    {
        double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }
    } // namespace

    long long degrees_of_freedom(double area_m2, double lambda_d)
    {
        if (!(area_m2 > 0.0) || !(lambda_d > 0.0))
            throw InvariantError("degrees_of_freedom: area and lambda*d must be > 0");
        const double ratio = area_m2 / lambda_d;
        return std::max(1LL, tolerant_ceil(ratio * ratio));
    }

    CapacityInputs CapacityInputs::from_geometry(double gamma, double g, int M, double area_m2, double lambda_d)
    {
        CapacityInputs in{gamma, g, M, degrees_of_freedom(area_m2, lambda_d), area_m2, lambda_d};
        in.validate();
        return in;
    }

    CapacityInputs CapacityInputs::normalized(double gamma_g, int M, double area_over_lambda_d)
    {
        return from_geometry(gamma_g, 1.0, M, area_over_lambda_d, 1.0);
    }

    void CapacityInputs::validate() const
    {
        if (gamma < 0.0 || g < 0.0)
            throw InvariantError("CapacityInputs: gamma and g must be >= 0");
        if (M < 1 || Mscript < 1)
            throw InvariantError("CapacityInputs: M and Mscript must be >= 1");
        if (!(area_m2 > 0.0) || !(lambda_d > 0.0))
            throw InvariantError("CapacityInputs: area and lambda*d must be > 0");
    }

    double uniform_spectral_efficiency(const EigenSpectrum &spectrum, double gamma, double g, int M)
    {
        if (M < 1 || spectrum.size() != static_cast<std::size_t>(M))
            throw InvariantError("uniform_spectral_efficiency: spectrum has " + std::to_string(spectrum.size()) +
                                 " values, M = " + std::to_string(M));
        const double scale = gamma * g / (static_cast<double>(M) * M * M);
        double xi = 0.0;
        for (double s : spectrum.values())
            xi += log2_1p(scale * s);
        return xi;
    }

    WaterfillingResult waterfilling(const EigenSpectrum &spectrum, double gamma, double g, int M)
    {
        if (M < 1 || spectrum.size() != static_cast<std::size_t>(M))
            throw InvariantError("waterfilling: spectrum/M mismatch");
        const auto &lam = spectrum.values(); // already non-increasing, stable order for ties
        if (lam.empty() || !(lam.front() > 0.0))
            throw InvariantError("waterfilling: no positive eigenvalue");
        const double budget = gamma * g / (static_cast<double>(M) * M);

        // Upward scan: with descending eigenvalues the active set {1..K} is feasible iff mu_K >= 1/lambda_K.
        int best_k = 1;
        double best_mu = budget + 1.0 / lam[0];
        double inv_sum = 0.0;
        for (std::size_t k = 1; k <= lam.size(); ++k)
        {
            if (!(lam[k - 1] > 0.0))
                break;
            inv_sum += 1.0 / lam[k - 1];
            const double mu = (budget + inv_sum) / static_cast<double>(k);
            if (mu < 1.0 / lam[k - 1])
                break;
            best_k = static_cast<int>(k);
            best_mu = mu;
        }

        WaterfillingResult r;
        r.active_modes = best_k;
        r.water_level = best_mu;
        r.powers.assign(lam.size(), 0.0);
        for (int i = 0; i < best_k; ++i)
        {
            const double p = std::max(0.0, best_mu - 1.0 / lam[static_cast<std::size_t>(i)]);
            r.powers[static_cast<std::size_t>(i)] = p;
            r.xi += log2_1p(lam[static_cast<std::size_t>(i)] * p);
        }
        return r;
    }

    double waterfilling_spectral_efficiency(const EigenSpectrum &spectrum, double gamma, double g, int M)
    {
        return waterfilling(spectrum, gamma, g, M).xi;
    }

    double spectral_efficiency_upper_bound(const CapacityInputs &in)
    {
        in.validate();
        const double m = static_cast<double>(std::min<long long>(in.M, in.Mscript));
        return m * log2_1p(in.gamma_g() / (static_cast<double>(in.M) * m));
    }

    double expected_spectral_efficiency_lower_bound(const CapacityInputs &in)
    {
        in.validate();
        const double ratio = in.area_over_lambda_d();
        if (ratio < 1.0 - 1e-12)
            throw InvariantError("expected_spectral_efficiency_lower_bound: |S|/(lambda d) = " + std::to_string(ratio) +
                                 " < 1");
        const double M = in.M;
        const double numer = 0.25 * M * log2_1p(in.gamma_g() / (2.0 * M * M));
        const double denom = (2.0 - 1.0 / M) + (32.0 / (9.0 * std::numbers::pi)) * (M - 2.0 + 1.0 / M) / ratio;
        return numer / denom;
    }

    double deterministic_capacity(const CapacityInputs &in) { return spectral_efficiency_upper_bound(in); }

    double stationary_snr_constant()
    {
        // phi(t) = ln(1+t) - 2t/(1+t) is negative on (0, t*) and positive beyond.
        auto phi = [](double t) { return std::log1p(t) - 2.0 * t / (1.0 + t); };
        double lo = 1.0, hi = 10.0;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            (phi(mid) < 0.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }

    double stream_objective(double x, double gamma_g) { return x * log2_1p(gamma_g / (x * x)); }

    StreamCountDesign optimal_stream_count(double gamma, double g)
    {
        const double gg = gamma * g;
        if (!(gg > 0.0) || !std::isfinite(gg))
            throw InvariantError("optimal_stream_count: gamma*g must be > 0");
        StreamCountDesign d;
        d.gamma_g = gg;
        d.t_star = stationary_snr_constant();
        d.x_opt = std::sqrt(gg / d.t_star);

        double lo = std::floor(d.x_opt), hi = std::ceil(d.x_opt);
        if (const double r = std::nearbyint(d.x_opt); std::abs(d.x_opt - r) <= 1e-9 * std::max(1.0, r))
            lo = hi = r;
        d.M_l = static_cast<int>(std::max(1.0, lo));
        d.M_u = static_cast<int>(std::max(1.0, hi));

        const double xi_l = stream_objective(d.M_l, gg), xi_u = stream_objective(d.M_u, gg);
        d.M_opt = xi_u > xi_l ? d.M_u : d.M_l;
        d.xi = std::max(xi_l, xi_u);
        d.xi_continuous = stream_objective(d.x_opt, gg);
        const double root = std::sqrt(gg);
        d.x_opt_over_sqrt_gg = d.x_opt / root;
        d.xi_over_sqrt_gg_bits = d.xi_continuous / root;
        d.xi_over_sqrt_gg_nats = d.xi_over_sqrt_gg_bits * std::numbers::ln2;
        return d;
    }

    double required_array_area(int M, double wavelength_m, double range_m)
    {
        if (M < 1)
            throw InvariantError("required_array_area: M must be >= 1");
        return std::sqrt(static_cast<double>(M)) * wavelength_m * range_m;
    }
} // namespace spacemimo
