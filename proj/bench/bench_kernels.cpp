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

// Serial reference vs OpenMP path for the data-parallel kernels.
#include "spacemimo/achievability.hpp"
#include "spacemimo/moments.hpp"
#include "spacemimo/montecarlo.hpp"
#include "spacemimo/prolate.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

using namespace spacemimo;

namespace
{
    Execution mode(const benchmark::State &state) { return state.range(0) == 0 ? Execution::Serial : Execution::Parallel; }

    void BM_ErgodicTrials(benchmark::State &state)
    {
        const ErgodicScenario s{8, 10.0, 100.0};
        for (auto _ : state)
            benchmark::DoNotOptimize(ergodic_uniform_xi(s, 2000, 1, mode(state)).mean_xi);
        state.SetItemsProcessed(state.iterations() * 2000);
    }

    void BM_DiscreteChannel(benchmark::State &state)
    {
        const double c = 6.0, lambda = 0.01, d = 1e6;
        const double R = std::sqrt(c * lambda * d / (2.0 * std::numbers::pi));
        const double aperture = 0.05 * std::numbers::pi * R * R;
        const auto spec = assemble_operator_spectrum(ProlateProblem::for_c(c), 1.0, R, lambda, d);
        const auto part = build_partition(R, 1024);
        const auto tx = build_simple_antennas(part, spec, 9, aperture, AntennaSide::Transmit);
        const auto rx = build_simple_antennas(part, spec, 9, aperture, AntennaSide::Receive);
        for (auto _ : state)
            benchmark::DoNotOptimize(discrete_channel_matrix(tx, rx, lambda, d, mode(state)).entries.data());
    }

    void BM_FMonteCarlo(benchmark::State &state)
    {
        for (auto _ : state)
            benchmark::DoNotOptimize(f_of_c(10.0, FMethod::MonteCarlo, 200000, 3, 0.0, mode(state)).estimate);
        state.SetItemsProcessed(state.iterations() * 200000);
    }

    void BM_OperatorSpectrum(benchmark::State &state)
    {
        const double c = 12.0;
        const double R = std::sqrt(c / (2.0 * std::numbers::pi));
        for (auto _ : state)
            benchmark::DoNotOptimize(
                assemble_operator_spectrum(ProlateProblem::for_c(c), 1.0, R, 1.0, 1.0, mode(state)).nu_sq_total);
    }
} // namespace

// Arg 0 = serial reference, 1 = OpenMP
BENCHMARK(BM_ErgodicTrials)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DiscreteChannel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FMonteCarlo)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OperatorSpectrum)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
