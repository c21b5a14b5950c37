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

#include "spacemimo/numerics.hpp"

#include <vector>

namespace spacemimo
{
    MeanEstimate mean_and_std_error(std::span<const double> samples)
    {
        MeanEstimate est;
        const std::size_t n = samples.size();
        if (n == 0)
            return est;
        est.mean = pairwise_sum(samples) / static_cast<double>(n);
        if (n < 2)
            return est;
        std::vector<double> sq(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            const double d = samples[i] - est.mean;
            sq[i] = d * d;
        }
        const double var = pairwise_sum(sq) / static_cast<double>(n - 1);
        est.std_error = std::sqrt(var / static_cast<double>(n));
        return est;
    }

    MeanEstimate batch_means(std::span<const double> samples, std::size_t batch_size)
    {
        MeanEstimate est;
        if (samples.empty() || batch_size == 0)
            return est;
        est.mean = pairwise_sum(samples) / static_cast<double>(samples.size());
        const std::size_t n_batches = samples.size() / batch_size;
        if (n_batches < 2)
            return mean_and_std_error(samples);
        std::vector<double> means(n_batches);
        for (std::size_t b = 0; b < n_batches; ++b)
            means[b] = pairwise_sum(samples.subspan(b * batch_size, batch_size)) / static_cast<double>(batch_size);
        est.std_error = mean_and_std_error(means).std_error;
        return est;
    }
} // namespace spacemimo
