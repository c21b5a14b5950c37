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

#include "spacemimo/quadrature.hpp"
#include "spacemimo/errors.hpp"

#include <cmath>
#include <numbers>

namespace spacemimo
{
    QuadratureRule gauss_legendre(int n, double a, double b)
    {
        if (n < 1)
            throw InvariantError("gauss_legendre: n must be >= 1");
        QuadratureRule q;
        q.nodes.resize(static_cast<std::size_t>(n));
        q.weights.resize(static_cast<std::size_t>(n));
        const double half = 0.5 * (b - a), mid = 0.5 * (b + a);

        // Roots are symmetric; compute the upper half and mirror.
        const int m = (n + 1) / 2;
        for (int i = 0; i < m; ++i)
        {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5)); // Tricomi initial guess
            double dp = 0.0;
            for (int it = 0; it < 100; ++it)
            {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k)
                {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16)
                {
                    // one more derivative evaluation at the converged root
                    p0 = 1.0, p1 = x;
                    for (int k = 2; k <= n; ++k)
                    {
                        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                        p0 = p1;
                        p1 = p2;
                    }
                    dp = n * (x * p1 - p0) / (x * x - 1.0);
                    break;
                }
            }
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            const auto lo = static_cast<std::size_t>(i), hi = static_cast<std::size_t>(n - 1 - i);
            q.nodes[lo] = mid - half * x;
            q.nodes[hi] = mid + half * x;
            q.weights[lo] = q.weights[hi] = half * w;
        }
        if (n % 2 == 1)
            q.nodes[static_cast<std::size_t>(n / 2)] = mid; // exact centre
        return q;
    }

    QuadratureRule composite_gauss_legendre(int n, int panels, double a, double b)
    {
        if (panels < 1)
            throw InvariantError("composite_gauss_legendre: panels must be >= 1");
        QuadratureRule q;
        const double h = (b - a) / panels;
        for (int p = 0; p < panels; ++p)
        {
            const auto panel = gauss_legendre(n, a + p * h, p + 1 == panels ? b : a + (p + 1) * h);
            q.nodes.insert(q.nodes.end(), panel.nodes.begin(), panel.nodes.end());
            q.weights.insert(q.weights.end(), panel.weights.begin(), panel.weights.end());
        }
        return q;
    }
} // namespace spacemimo
