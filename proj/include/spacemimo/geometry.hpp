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

#include "spacemimo/csv.hpp"

#include <cstdint>
#include <vector>

namespace spacemimo
{
    // Local frame: x is the line of sight, (y, z) span the transverse plane.
    struct Point3
    {
        double x = 0.0;
        double y = 0.0;
        double z = 0.0;
    };

    // Transverse-plane coordinates.
    struct Point2
    {
        double y = 0.0;
        double z = 0.0;
    };

    double norm(const Point3 &p) noexcept;
    double norm(const Point2 &p) noexcept;

    // Antenna nodes of one end of the link, inside a ball of radius radius_m.
    struct NodeCluster
    {
        std::vector<Point3> nodes;
        double radius_m = 0.0;

        std::size_t count() const noexcept { return nodes.size(); }
        void validate() const; // containment and count >= 1; throws InvariantError
    };

    // Nodes projected onto (or sampled in) the transverse disc of radius disc_radius_m.
    struct DiscCluster
    {
        std::vector<Point2> nodes;
        double disc_radius_m = 0.0;

        std::size_t count() const noexcept { return nodes.size(); }
        double area_m2() const noexcept;
        void validate() const;
    };

    // Uniform i.i.d. samples by rejection from the bounding cube / square. Deterministic in seed.
    NodeCluster sample_ball_cluster(double radius_m, std::size_t count, std::uint64_t seed);
    DiscCluster sample_disc_cluster(double disc_radius_m, std::size_t count, std::uint64_t seed);

    // Drops x. The disc radius is the ball radius.
    DiscCluster project_to_disc(const NodeCluster &cluster);

    // Parabolic (Fresnel) deviation of the tx->rx path from the nominal range d:
    //   (x_R - x_T) + ((y_R - y_T)^2 + (z_R - z_T)^2) / (2d)
    // Requires d >= 100 * max(|u_T|, |v_R|); throws InvariantError otherwise.
    double fresnel_distance(const Point3 &u_tx, const Point3 &v_rx, double range_m);

    // Exact |(d + x_R - x_T, y_R - y_T, z_R - z_T)| - d, evaluated without cancellation.
    double exact_path_deviation(const Point3 &u_tx, const Point3 &v_rx, double range_m) noexcept;

    // Columns idx,x,y,z (schema "cluster3d") and idx,y,z (schema "cluster2d"), meters.
    CsvTable to_csv(const NodeCluster &cluster);
    CsvTable to_csv(const DiscCluster &cluster);
} // namespace spacemimo
