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

#include "spacemimo/errors.hpp"
#include "spacemimo/geometry.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

using namespace spacemimo;

TEST_SUITE("geometry")
{
    TEST_CASE("ball sampling: containment, determinism, third radial moment")
    {
        const auto one = sample_ball_cluster(1.0, 1, 9);
        REQUIRE(one.count() == 1);
        CHECK(norm(one.nodes[0]) <= 1.0);

        const auto a = sample_ball_cluster(10.0, 10000, 77), b = sample_ball_cluster(10.0, 10000, 77);
        double m3 = 0.0;
        for (std::size_t i = 0; i < a.count(); ++i)
        {
            CHECK(a.nodes[i].x == b.nodes[i].x);
            CHECK(a.nodes[i].z == b.nodes[i].z);
            m3 += std::pow(norm(a.nodes[i]), 3);
        }
        // uniform ball of radius R: E r^3 = 3 R^3 / 6 = R^3 / 2
        CHECK(m3 / 10000.0 == doctest::Approx(500.0).epsilon(0.02));
        CHECK_THROWS_AS(sample_ball_cluster(1.0, 0, 1), InvariantError);
    }

    TEST_CASE("disc sampling: containment, determinism, second moment")
    {
        const auto one = sample_disc_cluster(1.0, 1, 3);
        CHECK(norm(one.nodes[0]) <= 1.0);
        const auto a = sample_disc_cluster(1.0, 100000, 8), b = sample_disc_cluster(1.0, 100000, 8);
        double m2 = 0.0;
        for (std::size_t i = 0; i < a.count(); ++i)
        {
            CHECK(a.nodes[i].y == b.nodes[i].y);
            m2 += a.nodes[i].y * a.nodes[i].y + a.nodes[i].z * a.nodes[i].z;
        }
        CHECK(m2 / 100000.0 == doctest::Approx(0.5).epsilon(0.01));
        CHECK(a.area_m2() == doctest::Approx(std::numbers::pi));
        CHECK_THROWS_AS(sample_disc_cluster(1.0, 0, 1), InvariantError);
    }

    TEST_CASE("property: disc angles are uniform (chi-square, 1% level)")
    {
        const auto c = sample_disc_cluster(2.0, 100000, 31);
        constexpr int bins = 20;
        std::array<double, bins> h{};
        for (const auto &p : c.nodes)
        {
            const double a = std::atan2(p.z, p.y) + std::numbers::pi;
            h[static_cast<std::size_t>(std::min(bins - 1, static_cast<int>(a / (2 * std::numbers::pi) * bins)))] += 1;
        }
        double chi2 = 0.0;
        const double e = 100000.0 / bins;
        for (double o : h)
            chi2 += (o - e) * (o - e) / e;
        CHECK(chi2 < 36.19); // chi-square 99th percentile, 19 dof
    }

    TEST_CASE("projection drops x and keeps order")
    {
        NodeCluster c{{{5, 0, 0}, {1, 2, 3}, {-1, 0.5, -0.25}}, 10.0};
        const auto d = project_to_disc(c);
        REQUIRE(d.count() == 3);
        CHECK(d.nodes[0].y == 0.0);
        CHECK(d.nodes[0].z == 0.0);
        CHECK(d.nodes[1].y == 2.0);
        CHECK(d.nodes[1].z == 3.0);
        CHECK(d.nodes[2].z == -0.25);
        CHECK(d.disc_radius_m == 10.0);
    }

    TEST_CASE("Fresnel deviation examples")
    {
        CHECK(fresnel_distance({0, 0, 0}, {0, 0, 0}, 1e3) == 0.0);
        CHECK(fresnel_distance({0, 0, 0}, {1, 0, 0}, 1e3) == 1.0);
        CHECK(fresnel_distance({0, 3, 4}, {0, 0, 0}, 1e6) == doctest::Approx(1.25e-5).epsilon(1e-14));
        CHECK_THROWS_AS(fresnel_distance({0, 3, 4}, {0, 0, 0}, 400.0), InvariantError);
    }

    TEST_CASE("property: Fresnel deviation is within lambda/100 of the exact path at d >= 1e4 radius")
    {
        const double lambda = 0.01;
        for (std::uint64_t seed = 0; seed < 20; ++seed)
        {
            const double R = 5.0, d = 1e4 * R;
            const auto tx = sample_ball_cluster(R, 16, 2 * seed), rx = sample_ball_cluster(R, 16, 2 * seed + 1);
            for (const auto &u : tx.nodes)
                for (const auto &v : rx.nodes)
                {
                    const double exact = std::hypot(d + v.x - u.x, v.y - u.y, v.z - u.z);
                    CHECK(std::abs(exact - (d + fresnel_distance(u, v, d))) < lambda / 100.0);
                    CHECK(std::abs(exact_path_deviation(u, v, d) - fresnel_distance(u, v, d)) < lambda / 100.0);
                }
        }
    }

    TEST_CASE("cluster CSV tables")
    {
        const auto c = sample_disc_cluster(1.0, 3, 1);
        const auto t = to_csv(c);
        CHECK(t.schema == "cluster2d");
        CHECK(t.columns == std::vector<std::string>{"idx", "y", "z"});
        CHECK(t.rows.size() == 3);
        CHECK(to_csv(sample_ball_cluster(1.0, 2, 1)).columns == std::vector<std::string>{"idx", "x", "y", "z"});
    }
}
