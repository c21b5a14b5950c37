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
#include "spacemimo/quadrature.hpp"
#include "spacemimo/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

using namespace spacemimo;

TEST_SUITE("numerics")
{
    TEST_CASE("pairwise sum matches a long double accumulation")
    {
        rng::Stream r(11);
        for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 1000u, 12345u})
        {
            std::vector<double> x(n);
            long double ref = 0.0L;
            for (auto &v : x)
            {
                v = r.uniform(-1.0, 1.0) * std::pow(10.0, r.uniform(-3.0, 3.0));
                ref += v;
            }
            CHECK(pairwise_sum(x) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
        }
    }

    TEST_CASE("mean and standard error")
    {
        const std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
        const auto m = mean_and_std_error(x);
        CHECK(m.mean == doctest::Approx(2.5));
        // sample variance 5/3, se = sqrt(5/12)
        CHECK(m.std_error == doctest::Approx(std::sqrt(5.0 / 12.0)));

        const std::vector<double> constant(50, 3.25);
        CHECK(mean_and_std_error(constant).std_error == 0.0);
    }

    TEST_CASE("batch means agree with plain estimate for i.i.d. data")
    {
        rng::Stream r(5);
        std::vector<double> x(200000);
        for (auto &v : x)
            v = r.uniform01();
        const auto plain = mean_and_std_error(x);
        const auto batched = batch_means(x, 1000);
        CHECK(batched.mean == doctest::Approx(plain.mean).epsilon(1e-12));
        CHECK(batched.std_error == doctest::Approx(plain.std_error).epsilon(0.2));
    }

    TEST_CASE("tolerant ceiling")
    {
        CHECK(tolerant_ceil(9.0) == 9);
        CHECK(tolerant_ceil(std::nextafter(9.0, 10.0)) == 9);
        CHECK(tolerant_ceil(9.001) == 10);
        CHECK(tolerant_ceil(0.2) == 1);
    }

    TEST_CASE("derived seeds are pure and streams reproducible")
    {
        CHECK(rng::derive(1, 2, 3) == rng::derive(1, 2, 3));
        CHECK(rng::derive(1, 2, 3) != rng::derive(1, 2, 4));
        CHECK(rng::derive(1, 2, 3) != rng::derive(1, 3, 3));
        rng::Stream a(42), b(42);
        for (int i = 0; i < 100; ++i)
        {
            const double u = a.uniform01();
            CHECK(u == b.uniform01());
            CHECK(u >= 0.0);
            CHECK(u < 1.0);
        }
        CHECK(rng::fnv1a("") == 0xCBF29CE484222325ULL);
        CHECK(rng::fnv1a("a") == 0xAF63DC4C8601EC8CULL);
    }

    TEST_CASE("Gauss-Legendre is exact for polynomials of degree 2n-1")
    {
        for (int n : {1, 2, 5, 16, 64, 257})
        {
            const auto q = gauss_legendre(n, 0.0, 1.0);
            CHECK(std::accumulate(q.weights.begin(), q.weights.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
            for (int deg : {0, 1, 2 * n - 1})
            {
                double s = 0.0;
                for (std::size_t k = 0; k < q.nodes.size(); ++k)
                    s += q.weights[k] * std::pow(q.nodes[k], deg);
                CHECK(s == doctest::Approx(1.0 / (deg + 1)).epsilon(1e-12));
            }
            for (std::size_t k = 1; k < q.nodes.size(); ++k)
                CHECK(q.nodes[k] > q.nodes[k - 1]);
        }
        const auto c = composite_gauss_legendre(8, 10, 0.0, std::numbers::pi);
        double s = 0.0;
        for (std::size_t k = 0; k < c.nodes.size(); ++k)
            s += c.weights[k] * std::sin(c.nodes[k]);
        CHECK(s == doctest::Approx(2.0).epsilon(1e-13));
    }
}
