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

#include "spacemimo/linkbudget.hpp"
#include "spacemimo/errors.hpp"

#include <cmath>
#include <string>

namespace spacemimo
{
    namespace
    {
        void require_positive(double v, const char *name)
        {
            if (!(v > 0.0) || !std::isfinite(v))
                throw InvariantError(std::string("LinkBudget: ") + name + " must be finite and > 0");
        }
    } // namespace

    LinkBudget::LinkBudget(const Params &p) : p_(p)
    {
        require_positive(p.wavelength_m, "wavelength_m");
        require_positive(p.range_m, "range_m");
        require_positive(p.tx_aperture_m2, "tx_aperture_m2");
        require_positive(p.rx_aperture_m2, "rx_aperture_m2");
        require_positive(p.loss_factor, "loss_factor");
        require_positive(p.power_W, "power_W");
        require_positive(p.bandwidth_Hz, "bandwidth_Hz");
        require_positive(p.noise_psd_W_per_Hz, "noise_psd_W_per_Hz");
        if (p.loss_factor > 1.0)
            throw InvariantError("LinkBudget: loss_factor must be <= 1");
        if (!(channel_gain() < 1.0))
            throw InvariantError("LinkBudget: channel gain g = " + std::to_string(channel_gain()) +
                                 " must be < 1 (deep-space regime)");
    }

    double LinkBudget::channel_gain() const noexcept
    {
        return spacemimo::channel_gain(p_.tx_aperture_m2, p_.rx_aperture_m2, p_.loss_factor, p_.wavelength_m,
                                       p_.range_m);
    }

    double LinkBudget::input_snr() const noexcept
    {
        return spacemimo::input_snr(p_.power_W, p_.bandwidth_Hz, p_.noise_psd_W_per_Hz);
    }

    double channel_gain(double tx_aperture_m2, double rx_aperture_m2, double loss_factor, double wavelength_m,
                        double range_m) noexcept
    {
        const double ld = wavelength_m * range_m;
        return tx_aperture_m2 * rx_aperture_m2 * loss_factor / (ld * ld);
    }

    double input_snr(double power_W, double bandwidth_Hz, double noise_psd_W_per_Hz) noexcept
    {
        return power_W / (bandwidth_Hz * noise_psd_W_per_Hz);
    }

    double channel_gain(const LinkBudget &budget) noexcept { return budget.channel_gain(); }

    double input_snr(const LinkBudget &budget) noexcept { return budget.input_snr(); }

    double siso_spectral_efficiency(double gamma, double g)
    {
        if (gamma < 0.0 || g < 0.0)
            throw InvariantError("siso_spectral_efficiency: gamma and g must be >= 0");
        return std::log2(1.0 + gamma * g);
    }
} // namespace spacemimo
