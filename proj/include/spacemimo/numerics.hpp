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

#include <cmath>
#include <cstddef>
#include <span>

namespace spacemimo
{
    // Selects the OpenMP kernel or its serial reference. Both produce bit-identical results.
    enum class Execution
    {
        Serial,
        Parallel
    };

    // Pairwise (cascade) summation with a fixed tree shape: the result depends only on the
    // input order, never on scheduling.
    inline double pairwise_sum(std::span<const double> x)
    {
        if (x.empty())
            return 0.0;
        if (x.size() <= 8)
        {
            double s = 0.0;
            for (double v : x)
                s += v;
            return s;
        }
        const std::size_t half = x.size() / 2;
        return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
    }

    // Sample mean and standard error of the mean.
    struct MeanEstimate
    {
        double mean = 0.0;
        double std_error = 0.0;
    };

    MeanEstimate mean_and_std_error(std::span<const double> samples);

    // Batch-means variant: consecutive batches of batch_size samples; a trailing partial batch is dropped
    // from the variance estimate but kept in the mean.
    MeanEstimate batch_means(std::span<const double> samples, std::size_t batch_size);

    // ceil(x) that does not bump values sitting a few ulps above an integer.
    inline long long tolerant_ceil(double x)
    {
        return static_cast<long long>(std::ceil(x * (1.0 - 1e-12)));
    }
} // namespace spacemimo
