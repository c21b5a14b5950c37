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

#include "spacemimo/channel.hpp"
#include "spacemimo/csv.hpp"
#include "spacemimo/geometry.hpp"
#include "spacemimo/numerics.hpp"
#include "spacemimo/prolate.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

namespace spacemimo
{
    struct DiscCell
    {
        Point2 center;
        double area = 0.0;
        double inscribed_radius = 0.0; // radius of a disc centred on `center` that stays inside the cell
        int ring = 0;                  // 0 is the central disc
    };

    // Equal-area polar partition: a central disc plus annuli split into angular sectors, the number of
    // sectors of ring k growing like 8k so cells stay roughly square.
    struct DiscPartition
    {
        std::vector<DiscCell> cells;
        double disc_radius_m = 0.0;

        std::size_t cell_count() const noexcept { return cells.size(); }
        double total_area() const;
    };

    // With a seed, every ring is rotated by a random angle and every node is placed at a random point of
    // the middle half of its cell, so the result shares only the ring radii with the unseeded partition.
    DiscPartition build_partition(double disc_radius_m, int cell_count,
                                  std::optional<std::uint64_t> jitter_seed = std::nullopt);

    enum class AntennaSide
    {
        Transmit,
        Receive
    };

    // M simple-function antennas: antenna m puts an element disc of area aperture/N at every cell
    // centre u_i with weight sqrt(|S| / aperture) p_m(u_i).
    struct SimpleAntennaSet
    {
        int mode_count = 0;
        AntennaSide side = AntennaSide::Transmit;
        DiscPartition partition;
        Eigen::MatrixXcd weights; // cell_count x M, p_m(u_i)
        double element_area = 0.0;
        double normalization = 0.0;
        double gram_defect = 0.0; // max |G - I|, G_mn = (|S| / N) sum_i conj(p_m(u_i)) p_n(u_i)

        double total_element_area() const { return element_area * static_cast<double>(partition.cell_count()); }
    };

    // Modes are the first M of spec.modes (non-increasing |nu|^2). Throws InvariantError when M exceeds
    // the available modes or an element disc does not fit its cell.
    SimpleAntennaSet build_simple_antennas(const DiscPartition &partition, const OperatorSpectrum &spec, int M,
                                           double aperture_m2, AntennaSide side);

    // Cell-midpoint evaluation of the coupling between the antenna sets, normalized so that the uniform
    // spectral efficiency of the result with the SISO (gamma, g) matches the operator model:
    //   H_mn = M (|S| / (N_T N_R)) sum_ij conj(p_m(v_i)) exp(i 2 pi <v_i, u_j> / (lambda d)) p_n(u_j)
    // The receive-row reduction is parallel over rows with a fixed per-row order, so both paths agree
    // bit for bit.
    ChannelMatrix discrete_channel_matrix(const SimpleAntennaSet &tx, const SimpleAntennaSet &rx, double wavelength_m,
                                          double range_m, Execution exec = Execution::Parallel);

    // sum_{m <= M} log2(1 + (gamma / M) (A_T A_R / |S|^2) |nu_m|^2)
    double operator_limit_spectral_efficiency(const OperatorSpectrum &spec, int M, double gamma, double tx_aperture_m2,
                                              double rx_aperture_m2);

    struct ConvergenceSetup
    {
        double wavelength_m = 0.0;
        double range_m = 0.0;
        double disc_radius_m = 0.0;
        double tx_aperture_m2 = 0.0;
        double rx_aperture_m2 = 0.0;
        double loss_factor = 1.0;
        double gamma = 0.0;
        int M = 1;
        bool independent_partitions = false;
        std::uint64_t seed = 0; // rotation seeds when independent_partitions is set
    };

    struct ConvergencePoint
    {
        int N = 0;
        double xi_discrete = 0.0;
        double xi_limit = 0.0;
        double gap = 0.0; // |xi_discrete - xi_limit| / xi_limit
        double gram_defect = 0.0;
        double max_singular_error = 0.0; // max_m relative error of sigma_m vs sqrt(A_T A_R) |nu_m| / |S| * M / sqrt(g)
    };

    std::vector<ConvergencePoint> convergence_curve(const ConvergenceSetup &setup, const OperatorSpectrum &spec,
                                                    const std::vector<int> &cell_counts,
                                                    Execution exec = Execution::Parallel);

    // True when the gap does not increase over the last three points.
    bool gap_tail_non_increasing(const std::vector<ConvergencePoint> &curve);

    // N,xi_discrete,xi_limit,gap,gram_defect
    CsvTable to_csv(const std::vector<ConvergencePoint> &curve);
} // namespace spacemimo
