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

#include "spacemimo/montecarlo.hpp"
#include "spacemimo/errors.hpp"
#include "spacemimo/geometry.hpp"
#include "spacemimo/rng.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

namespace spacemimo
{
    void ErgodicScenario::validate() const
    {
        if (M < 1)
            throw InvariantError("ErgodicScenario: M must be >= 1");
        if (!(S_over_ld > 0.0) || !std::isfinite(S_over_ld))
            throw InvariantError("ErgodicScenario: S_over_ld must be > 0");
        if (!(gamma_g >= 0.0) || !std::isfinite(gamma_g))
            throw InvariantError("ErgodicScenario: gamma_g must be >= 0");
    }

    std::string ErgodicScenario::canonical() const
    {
        return "M=" + std::to_string(M) + ";S_over_ld=" + format_double(S_over_ld) + ";gamma_g=" + format_double(gamma_g);
    }

    std::uint64_t ErgodicScenario::fingerprint() const { return rng::fnv1a(canonical()); }

    std::uint64_t ErgodicScenario::geometry_stream() const
    {
        return rng::fnv1a("M=" + std::to_string(M) + ";S_over_ld=" + format_double(S_over_ld));
    }

    std::uint64_t trial_seed(std::uint64_t master, std::uint64_t geometry_stream, std::uint64_t trial)
    {
        return rng::derive(master, geometry_stream, trial);
    }

    ChannelMatrix sample_normalized_reduced(int M, double S_over_ld, std::uint64_t seed)
    {
        const double R = std::sqrt(S_over_ld / std::numbers::pi);
        const auto tx = sample_disc_cluster(R, static_cast<std::size_t>(M), rng::derive(seed, 1));
        const auto rx = sample_disc_cluster(R, static_cast<std::size_t>(M), rng::derive(seed, 2));
        return build_reduced_matrix(tx, rx, 1.0, 1.0);
    }

    namespace
    {
        // Squared singular values of every trial of one geometry, trial order.
        std::vector<EigenSpectrum> geometry_spectra(const ErgodicScenario &s, std::size_t trials, std::uint64_t seed,
                                                    Execution exec)
        {
            std::vector<EigenSpectrum> out(trials);
            std::vector<std::string> failures(trials);
            const auto stream = s.geometry_stream();
            const auto n = static_cast<long long>(trials);
#pragma omp parallel for schedule(dynamic, 16) if (exec == Execution::Parallel)
            for (long long t = 0; t < n; ++t)
            {
                try
                {
                    const auto H = sample_normalized_reduced(s.M, s.S_over_ld,
                                                             trial_seed(seed, stream, static_cast<std::uint64_t>(t)));
                    out[static_cast<std::size_t>(t)] = singular_spectrum(H);
                }
                catch (const std::exception &e)
                {
                    failures[static_cast<std::size_t>(t)] = e.what();
                }
            }
            for (const auto &f : failures)
                if (!f.empty())
                    throw NumericalError("ergodic trial", f);
            return out;
        }

        MeanEstimate summarize(const std::vector<double> &xs, bool &batched)
        {
            batched = xs.size() > kBatchThreshold;
            return batched ? batch_means(xs, kBatchSize) : mean_and_std_error(xs);
        }
    } // namespace

    bool exceeds_upper_bound(double xi, double bound) { return xi > bound + 1e-12 * std::max(1.0, bound); }

    std::vector<double> ergodic_samples(const ErgodicScenario &s, std::size_t trials, std::uint64_t seed,
                                        Execution exec)
    {
        s.validate();
        const auto spectra = geometry_spectra(s, trials, seed, exec);
        std::vector<double> xs(trials);
        for (std::size_t t = 0; t < trials; ++t)
            xs[t] = uniform_spectral_efficiency(spectra[t], s.gamma_g, 1.0, s.M);
        return xs;
    }

    ErgodicEstimate ergodic_uniform_xi(const ErgodicScenario &s, std::size_t trials, std::uint64_t seed, Execution exec)
    {
        if (trials < kMinErgodicTrials)
            throw InvariantError("ergodic_uniform_xi: trials must be >= " + std::to_string(kMinErgodicTrials));
        const auto xs = ergodic_samples(s, trials, seed, exec);
        const double ub = spectral_efficiency_upper_bound(CapacityInputs::normalized(s.gamma_g, s.M, s.S_over_ld));

        ErgodicEstimate e;
        const auto m = summarize(xs, e.batched);
        e.mean_xi = m.mean;
        e.std_error = m.std_error;
        e.trials = trials;
        e.fingerprint = s.fingerprint();
        e.max_ub_excess = -std::numeric_limits<double>::infinity();
        for (double x : xs)
        {
            e.ub_violations += exceeds_upper_bound(x, ub) ? 1 : 0;
            e.max_ub_excess = std::max(e.max_ub_excess, x - ub);
        }
        return e;
    }

    std::vector<ScanRow> bound_scan(const std::vector<ErgodicScenario> &grid, std::size_t trials, std::uint64_t seed,
                                    Execution exec)
    {
        if (grid.empty())
            throw InvariantError("bound_scan: empty grid");
        if (trials < kMinErgodicTrials)
            throw InvariantError("bound_scan: trials must be >= " + std::to_string(kMinErgodicTrials));

        std::map<std::uint64_t, std::vector<EigenSpectrum>> cache;
        std::vector<ScanRow> rows;
        for (std::size_t k = 0; k < grid.size(); ++k)
        {
            const auto &s = grid[k];
            s.validate();
            auto it = cache.find(s.geometry_stream());
            if (it == cache.end())
                it = cache.emplace(s.geometry_stream(), geometry_spectra(s, trials, seed, exec)).first;

            const auto in = CapacityInputs::normalized(s.gamma_g, s.M, s.S_over_ld);
            ScanRow r;
            r.scenario_id = k;
            r.scenario = s;
            r.ub14 = spectral_efficiency_upper_bound(in);
            r.det_cap = deterministic_capacity(in);
            r.lb15 = s.S_over_ld >= 1.0 ? expected_spectral_efficiency_lower_bound(in)
                                        : std::numeric_limits<double>::quiet_NaN();
            std::vector<double> xs(trials);
            r.max_ub_excess = -std::numeric_limits<double>::infinity();
            for (std::size_t t = 0; t < trials; ++t)
            {
                xs[t] = uniform_spectral_efficiency(it->second[t], s.gamma_g, 1.0, s.M);
                r.ub_violations += exceeds_upper_bound(xs[t], r.ub14) ? 1 : 0;
                r.max_ub_excess = std::max(r.max_ub_excess, xs[t] - r.ub14);
            }
            bool batched = false;
            const auto m = summarize(xs, batched);
            r.mean_xi = m.mean;
            r.se = m.std_error;
            r.lb_ok = std::isnan(r.lb15) || r.mean_xi >= r.lb15 - 3.0 * r.se;
            rows.push_back(r);
        }
        return rows;
    }

    CsvTable to_csv(const std::vector<ScanRow> &rows)
    {
        CsvTable t{"scan",
                   {"scenario_id", "M", "S_over_ld", "gamma_g", "mean_xi", "se", "lb15", "ub14", "det_cap", "ub_violations"},
                   {}};
        for (const auto &r : rows)
            t.add_row({static_cast<std::int64_t>(r.scenario_id), static_cast<std::int64_t>(r.scenario.M),
                       r.scenario.S_over_ld, r.scenario.gamma_g, r.mean_xi, r.se, r.lb15, r.ub14, r.det_cap,
                       static_cast<std::int64_t>(r.ub_violations)});
        return t;
    }
} // namespace spacemimo
