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

#include "spacemimo/capacity.hpp"
#include "spacemimo/channel.hpp"
#include "spacemimo/csv.hpp"
#include "spacemimo/numerics.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace spacemimo
{
    // Random-placement scenario in normalized units: only M, |S|/(lambda d) and gamma g matter.
    struct ErgodicScenario
    {
        int M = 1;
        double S_over_ld = 1.0;
        double gamma_g = 1.0;

        void validate() const;
        std::string canonical() const;  // "M=4;S_over_ld=10;gamma_g=100", shortest round-trip doubles
        std::uint64_t fingerprint() const;
        // Trials of scenarios sharing (M, S_over_ld) use the same node draws (common random numbers).
        std::uint64_t geometry_stream() const;
    };

    // Seed of trial `trial` for a geometry stream; tx and rx clusters use derive(seed, 1) and derive(seed, 2).
    std::uint64_t trial_seed(std::uint64_t master, std::uint64_t geometry_stream, std::uint64_t trial);

    // M i.i.d. uniform nodes per end on a disc of area S_over_ld, lambda = d = 1.
    ChannelMatrix sample_normalized_reduced(int M, double S_over_ld, std::uint64_t seed);

    struct ErgodicEstimate
    {
        double mean_xi = 0.0;
        double std_error = 0.0;
        std::size_t trials = 0;
        std::uint64_t fingerprint = 0;
        bool batched = false;         // batch means (size 1000) used when trials > 1e5
        std::size_t ub_violations = 0; // trials above the per-realization upper bound
        double max_ub_excess = 0.0;   // largest xi - bound over trials, b/s/Hz (<= 0 when none)
    };

    inline constexpr std::size_t kMinErgodicTrials = 30;
    inline constexpr std::size_t kBatchThreshold = 100000;
    inline constexpr std::size_t kBatchSize = 1000;

    // Per-realization uniform spectral efficiencies, trial order.
    std::vector<double> ergodic_samples(const ErgodicScenario &s, std::size_t trials, std::uint64_t seed,
                                        Execution exec = Execution::Parallel);

    ErgodicEstimate ergodic_uniform_xi(const ErgodicScenario &s, std::size_t trials, std::uint64_t seed,
                                       Execution exec = Execution::Parallel);

    // xi > bound beyond round-off
    bool exceeds_upper_bound(double xi, double bound);

    struct ScanRow
    {
        std::size_t scenario_id = 0;
        ErgodicScenario scenario;
        double mean_xi = 0.0;
        double se = 0.0;
        double lb15 = 0.0;      // NaN when |S|/(lambda d) < 1
        double ub14 = 0.0;
        double det_cap = 0.0;
        std::size_t ub_violations = 0;
        double max_ub_excess = 0.0;
        bool lb_ok = true;      // mean >= lb15 - 3 se
    };

    // Spectra are drawn once per (M, S_over_ld) and reused for every gamma g of that geometry.
    std::vector<ScanRow> bound_scan(const std::vector<ErgodicScenario> &grid, std::size_t trials, std::uint64_t seed,
                                    Execution exec = Execution::Parallel);

    // scenario_id,M,S_over_ld,gamma_g,mean_xi,se,lb15,ub14,det_cap,ub_violations
    CsvTable to_csv(const std::vector<ScanRow> &rows);
} // namespace spacemimo
