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

namespace spacemimo
{
    // Scalar SISO link budget, SI units throughout.
    //
    // Construction validates every field and rejects budgets whose channel gain is not below one:
    // all of the phase-only channel models assume the deep-space regime g << 1.
    class LinkBudget
    {
    public:
        struct Params
        {
            double wavelength_m = 0.0;
            double range_m = 0.0;
            double tx_aperture_m2 = 0.0;
            double rx_aperture_m2 = 0.0;
            double loss_factor = 1.0; // aggregate unmodeled losses, in (0, 1]
            double power_W = 0.0;
            double bandwidth_Hz = 0.0;
            double noise_psd_W_per_Hz = 0.0;
        };

        explicit LinkBudget(const Params &p); // throws InvariantError

        const Params &params() const noexcept { return p_; }

        double channel_gain() const noexcept;
        double input_snr() const noexcept;
        double lambda_d() const noexcept { return p_.wavelength_m * p_.range_m; }

        // True when g > 1e-3; the budget is accepted but callers should warn.
        bool weak_deep_space() const noexcept { return channel_gain() > 1e-3; }

    private:
        Params p_;
    };

    // g = A_T A_R L / (lambda^2 d^2)
    double channel_gain(const LinkBudget &budget) noexcept;
    // Raw arithmetic form, no regime check.
    double channel_gain(double tx_aperture_m2, double rx_aperture_m2, double loss_factor,
                        double wavelength_m, double range_m) noexcept;

    // gamma = P / (B N0)
    double input_snr(const LinkBudget &budget) noexcept;
    double input_snr(double power_W, double bandwidth_Hz, double noise_psd_W_per_Hz) noexcept;

    // log2(1 + gamma g), b/s/Hz
    double siso_spectral_efficiency(double gamma, double g);
} // namespace spacemimo
