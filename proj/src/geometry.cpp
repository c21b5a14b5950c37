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

#include "spacemimo/geometry.hpp"
#include "spacemimo/errors.hpp"
#include "spacemimo/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spacemimo
{
    double norm(const Point3 &p) noexcept { return std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z); }
    double norm(const Point2 &p) noexcept { return std::hypot(p.y, p.z); }

    namespace
    {
        // Allow a few ulps for points produced by scaling unit-ball samples.
        constexpr double containment_slack = 1.0 + 1e-12;

        void require_radius(double r, const char *who)
        {
            if (!(r > 0.0) || !std::isfinite(r))
                throw InvariantError(std::string(who) + ": radius must be finite and > 0");
        }
    } // namespace

    void NodeCluster::validate() const
    {
        require_radius(radius_m, "NodeCluster");
        if (nodes.empty())
            throw InvariantError("NodeCluster: count must be >= 1");
        for (const auto &p : nodes)
            if (norm(p) > radius_m * containment_slack)
                throw InvariantError("NodeCluster: node outside ball of radius " + std::to_string(radius_m));
    }

    double DiscCluster::area_m2() const noexcept { return M_PI * disc_radius_m * disc_radius_m; }

    void DiscCluster::validate() const
    {
        require_radius(disc_radius_m, "DiscCluster");
        if (nodes.empty())
            throw InvariantError("DiscCluster: count must be >= 1");
        for (const auto &p : nodes)
            if (norm(p) > disc_radius_m * containment_slack)
                throw InvariantError("DiscCluster: node outside disc of radius " + std::to_string(disc_radius_m));
    }

    NodeCluster sample_ball_cluster(double radius_m, std::size_t count, std::uint64_t seed)
    {
        require_radius(radius_m, "sample_ball_cluster");
        if (count == 0)
            throw InvariantError("sample_ball_cluster: M must be >= 1");
        rng::Stream s(seed);
        NodeCluster c;
        c.radius_m = radius_m;
        c.nodes.reserve(count);
        while (c.nodes.size() < count)
        {
            const double x = s.uniform(-1.0, 1.0), y = s.uniform(-1.0, 1.0), z = s.uniform(-1.0, 1.0);
            if (x * x + y * y + z * z <= 1.0)
                c.nodes.push_back({x * radius_m, y * radius_m, z * radius_m});
        }
        return c;
    }

    DiscCluster sample_disc_cluster(double disc_radius_m, std::size_t count, std::uint64_t seed)
    {
        require_radius(disc_radius_m, "sample_disc_cluster");
        if (count == 0)
            throw InvariantError("sample_disc_cluster: M must be >= 1");
        rng::Stream s(seed);
        DiscCluster c;
        c.disc_radius_m = disc_radius_m;
        c.nodes.reserve(count);
        while (c.nodes.size() < count)
        {
            const double y = s.uniform(-1.0, 1.0), z = s.uniform(-1.0, 1.0);
            if (y * y + z * z <= 1.0)
                c.nodes.push_back({y * disc_radius_m, z * disc_radius_m});
        }
        return c;
    }

    DiscCluster project_to_disc(const NodeCluster &cluster)
    {
        cluster.validate();
        DiscCluster d;
        d.disc_radius_m = cluster.radius_m;
        d.nodes.reserve(cluster.count());
        for (const auto &p : cluster.nodes)
            d.nodes.push_back({p.y, p.z});
        return d;
    }

    double fresnel_distance(const Point3 &u_tx, const Point3 &v_rx, double range_m)
    {
        if (!(range_m > 0.0))
            throw InvariantError("fresnel_distance: range must be > 0");
        const double extent = std::max(norm(u_tx), norm(v_rx));
        if (range_m < 100.0 * extent)
            throw InvariantError("fresnel_distance: range/cluster ratio below 100 (d = " + std::to_string(range_m) +
                                 ", max |node| = " + std::to_string(extent) + ")");
        const double dy = v_rx.y - u_tx.y, dz = v_rx.z - u_tx.z;
        return (v_rx.x - u_tx.x) + (dy * dy + dz * dz) / (2.0 * range_m);
    }

    double exact_path_deviation(const Point3 &u_tx, const Point3 &v_rx, double range_m) noexcept
    {
        // sqrt(a^2 + rho^2) - d = (a - d) + rho^2 / (sqrt(a^2 + rho^2) + a), a = d + dx
        const double dx = v_rx.x - u_tx.x;
        const double dy = v_rx.y - u_tx.y, dz = v_rx.z - u_tx.z;
        const double a = range_m + dx;
        const double rho2 = dy * dy + dz * dz;
        return dx + rho2 / (std::sqrt(a * a + rho2) + a);
    }

    CsvTable to_csv(const NodeCluster &cluster)
    {
        CsvTable t{"cluster3d", {"idx", "x", "y", "z"}, {}};
        for (std::size_t i = 0; i < cluster.nodes.size(); ++i)
        {
            const auto &p = cluster.nodes[i];
            t.add_row({static_cast<std::int64_t>(i), p.x, p.y, p.z});
        }
        return t;
    }

    CsvTable to_csv(const DiscCluster &cluster)
    {
        CsvTable t{"cluster2d", {"idx", "y", "z"}, {}};
        for (std::size_t i = 0; i < cluster.nodes.size(); ++i)
        {
            const auto &p = cluster.nodes[i];
            t.add_row({static_cast<std::int64_t>(i), p.y, p.z});
        }
        return t;
    }
} // namespace spacemimo
