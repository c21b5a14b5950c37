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

#include "spacemimo/achievability.hpp"
#include "spacemimo/capacity.hpp"
#include "spacemimo/errors.hpp"
#include "spacemimo/rng.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <numeric>
#include <string>

namespace spacemimo
{
    namespace
    {
        constexpr double two_pi = 2.0 * std::numbers::pi;

        // Cells per ring proportional to the ring index, largest-remainder rounding, at least one each.
        std::vector<int> ring_counts(int cells_outside_centre)
        {
            const int rings = std::max(1, static_cast<int>(std::lround(std::sqrt(cells_outside_centre / 4.0))));
            const double total_weight = 0.5 * rings * (rings + 1.0);
            std::vector<int> counts(static_cast<std::size_t>(rings));
            std::vector<std::pair<double, int>> remainders;
            int assigned = 0;
            for (int k = 1; k <= rings; ++k)
            {
                const double quota = cells_outside_centre * k / total_weight;
                counts[static_cast<std::size_t>(k - 1)] = static_cast<int>(std::floor(quota));
                assigned += counts[static_cast<std::size_t>(k - 1)];
                remainders.emplace_back(quota - std::floor(quota), k - 1);
            }
            std::stable_sort(remainders.begin(), remainders.end(),
                             [](const auto &a, const auto &b) { return a.first > b.first; });
            for (int i = 0; assigned < cells_outside_centre; ++i, ++assigned)
                ++counts[static_cast<std::size_t>(remainders[static_cast<std::size_t>(i)].second)];
            for (auto &c : counts)
                if (c == 0)
                {
                    c = 1;
                    --*std::max_element(counts.begin(), counts.end());
                }
            return counts;
        }

        double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }
    } // namespace

    double DiscPartition::total_area() const
    {
        double s = 0.0;
        for (const auto &c : cells)
            s += c.area;
        return s;
    }

    DiscPartition build_partition(double disc_radius_m, int cell_count, std::optional<std::uint64_t> jitter_seed)
    {
        if (!(disc_radius_m > 0.0))
            throw InvariantError("build_partition: radius must be > 0");
        if (cell_count < 1)
            throw InvariantError("build_partition: N must be >= 1");

        DiscPartition p;
        p.disc_radius_m = disc_radius_m;
        const double R = disc_radius_m, N = cell_count;
        const double r0 = R * std::sqrt(1.0 / N);
        p.cells.push_back({{0.0, 0.0}, std::numbers::pi * r0 * r0, r0, 0});
        if (cell_count == 1)
        {
            p.cells.front().area = std::numbers::pi * R * R;
            p.cells.front().inscribed_radius = R;
            return p;
        }

        std::optional<rng::Stream> jitter;
        if (jitter_seed)
        {
            jitter.emplace(rng::derive(*jitter_seed, 0));
            // centre node anywhere within half the central radius
            const double a = two_pi * jitter->uniform01(), r = 0.5 * r0 * std::sqrt(jitter->uniform01());
            p.cells.front().center = {r * std::cos(a), r * std::sin(a)};
            p.cells.front().inscribed_radius = r0 - r;
        }

        const auto counts = ring_counts(cell_count - 1);
        int cumulative = 1;
        double r_in = r0;
        for (std::size_t k = 0; k < counts.size(); ++k)
        {
            const int n = counts[k];
            cumulative += n;
            const double r_out = k + 1 == counts.size() ? R : R * std::sqrt(cumulative / N);
            const double area = std::numbers::pi * (r_out * r_out - r_in * r_in) / n;
            const double width = two_pi / n;
            const double offset = jitter ? width * jitter->uniform01() : 0.0;
            for (int j = 0; j < n; ++j)
            {
                // Node at the area-median radius and mid-angle, or jittered over the middle half of the
                // cell (by area and by angle) when seeded.
                double t = 0.5, s = 0.5;
                if (jitter)
                {
                    t = jitter->uniform(0.25, 0.75);
                    s = jitter->uniform(0.25, 0.75);
                }
                const double rho = std::sqrt(r_in * r_in + t * (r_out * r_out - r_in * r_in));
                const double phi = offset + (j + s) * width;
                double inscribed = std::min(rho - r_in, r_out - rho);
                if (n >= 2)
                    inscribed = std::min(inscribed, rho * std::sin(std::min(s, 1.0 - s) * width));
                p.cells.push_back({{rho * std::cos(phi), rho * std::sin(phi)}, area, inscribed, static_cast<int>(k + 1)});
            }
            r_in = r_out;
        }
        return p;
    }

    SimpleAntennaSet build_simple_antennas(const DiscPartition &partition, const OperatorSpectrum &spec, int M,
                                           double aperture_m2, AntennaSide side)
    {
        if (M < 1 || static_cast<std::size_t>(M) > spec.modes.size())
            throw InvariantError("build_simple_antennas: M = " + std::to_string(M) + " exceeds the " +
                                 std::to_string(spec.modes.size()) + " available modes");
        const double R = partition.disc_radius_m;
        if (std::abs(R - spec.disc_radius_m) > 1e-12 * R)
            throw InvariantError("build_simple_antennas: partition and mode set use different discs");
        const double area = std::numbers::pi * R * R;
        if (!(aperture_m2 > 0.0) || aperture_m2 > area)
            throw InvariantError("build_simple_antennas: aperture must lie in (0, |S|]");

        const auto N = partition.cell_count();
        SimpleAntennaSet set;
        set.mode_count = M;
        set.side = side;
        set.partition = partition;
        set.element_area = aperture_m2 / static_cast<double>(N);
        set.normalization = std::sqrt(area / aperture_m2);

        const double element_radius = std::sqrt(set.element_area / std::numbers::pi);
        for (std::size_t i = 0; i < N; ++i)
            if (element_radius > partition.cells[i].inscribed_radius * (1.0 + 1e-12))
                throw InvariantError("build_simple_antennas: element disc (radius " + std::to_string(element_radius) +
                                     " m) does not fit cell " + std::to_string(i));

        // Radial values depend only on |u|; unjittered rings share one radius, so evaluate once per radius.
        std::map<double, Eigen::Index> radius_row;
        for (const auto &cell : partition.cells)
            radius_row.emplace(norm(cell.center), 0);
        Eigen::MatrixXd radial(static_cast<Eigen::Index>(radius_row.size()), M);
        Eigen::Index row = 0;
        for (auto &[rho, r] : radius_row)
        {
            r = row++;
            for (int m = 0; m < M; ++m)
            {
                const auto &md = spec.modes[static_cast<std::size_t>(m)];
                radial(r, m) = spec.radial[static_cast<std::size_t>(std::abs(md.order_N))].evaluate(
                    static_cast<std::size_t>(md.mode_m), rho / R);
            }
        }

        const double scale = 1.0 / (R * std::sqrt(two_pi));
        set.weights.resize(static_cast<Eigen::Index>(N), M);
        for (std::size_t i = 0; i < N; ++i)
        {
            const auto &cell = partition.cells[i];
            const double theta = std::atan2(cell.center.z, cell.center.y);
            for (int m = 0; m < M; ++m)
            {
                const int order = spec.modes[static_cast<std::size_t>(m)].order_N;
                set.weights(static_cast<Eigen::Index>(i), m) =
                    radial(radius_row.at(norm(cell.center)), m) * scale * std::polar(1.0, order * theta);
            }
        }

        const Eigen::MatrixXcd gram =
            (area / static_cast<double>(N)) * (set.weights.adjoint() * set.weights);
        set.gram_defect = (gram - Eigen::MatrixXcd::Identity(M, M)).cwiseAbs().maxCoeff();
        return set;
    }

    ChannelMatrix discrete_channel_matrix(const SimpleAntennaSet &tx, const SimpleAntennaSet &rx, double wavelength_m,
                                          double range_m, Execution exec)
    {
        if (tx.mode_count != rx.mode_count)
            throw InvariantError("discrete_channel_matrix: tx and rx mode counts differ");
        const double R = tx.partition.disc_radius_m;
        if (std::abs(R - rx.partition.disc_radius_m) > 1e-12 * R)
            throw InvariantError("discrete_channel_matrix: tx and rx discs differ");
        if (!(wavelength_m > 0.0) || !(range_m > 0.0))
            throw InvariantError("discrete_channel_matrix: wavelength and range must be > 0");

        const int M = tx.mode_count;
        const auto NT = static_cast<Eigen::Index>(tx.partition.cell_count());
        const auto NR = static_cast<Eigen::Index>(rx.partition.cell_count());
        const double inv_ld = 1.0 / (wavelength_m * range_m);
        const auto &u = tx.partition.cells;
        const auto &v = rx.partition.cells;

        // Y = K P_T, one receive cell per row.
        Eigen::MatrixXcd Y = Eigen::MatrixXcd::Zero(NR, M);
#pragma omp parallel for schedule(static) if (exec == Execution::Parallel)
        for (Eigen::Index i = 0; i < NR; ++i)
        {
            const Point2 vi = v[static_cast<std::size_t>(i)].center;
            Eigen::RowVectorXcd acc = Eigen::RowVectorXcd::Zero(M);
            for (Eigen::Index j = 0; j < NT; ++j)
            {
                const Point2 uj = u[static_cast<std::size_t>(j)].center;
                const double cycles = (vi.y * uj.y + vi.z * uj.z) * inv_ld;
                const double phase = two_pi * (cycles - std::nearbyint(cycles));
                const std::complex<double> k(std::cos(phase), std::sin(phase));
                acc += k * tx.weights.row(j);
            }
            Y.row(i) = acc;
        }

        const double area = std::numbers::pi * R * R;
        ChannelMatrix out;
        out.kind = ChannelKind::Discretized;
        out.meta = {wavelength_m, range_m, "simple-tx", "simple-rx"};
        out.entries = (static_cast<double>(M) * area / (static_cast<double>(NT) * static_cast<double>(NR))) *
                      (rx.weights.adjoint() * Y);
        return out;
    }

    double operator_limit_spectral_efficiency(const OperatorSpectrum &spec, int M, double gamma, double tx_aperture_m2,
                                              double rx_aperture_m2)
    {
        if (M < 1 || static_cast<std::size_t>(M) > spec.modes.size())
            throw InvariantError("operator_limit_spectral_efficiency: M out of range");
        const double area = std::numbers::pi * spec.disc_radius_m * spec.disc_radius_m;
        const double factor = gamma / M * tx_aperture_m2 * rx_aperture_m2 / (area * area);
        double xi = 0.0;
        for (int m = 0; m < M; ++m)
            xi += log2_1p(factor * spec.modes[static_cast<std::size_t>(m)].nu_sq);
        return xi;
    }

    std::vector<ConvergencePoint> convergence_curve(const ConvergenceSetup &s, const OperatorSpectrum &spec,
                                                    const std::vector<int> &cell_counts, Execution exec)
    {
        if (cell_counts.empty())
            throw InvariantError("convergence_curve: no cell counts");
        const double lambda_d = s.wavelength_m * s.range_m;
        const double g = s.tx_aperture_m2 * s.rx_aperture_m2 * s.loss_factor / (lambda_d * lambda_d);
        const double area = std::numbers::pi * s.disc_radius_m * s.disc_radius_m;
        const double limit = operator_limit_spectral_efficiency(spec, s.M, s.gamma, s.tx_aperture_m2, s.rx_aperture_m2);

        std::vector<double> expected_sigma(static_cast<std::size_t>(s.M));
        for (int m = 0; m < s.M; ++m)
            expected_sigma[static_cast<std::size_t>(m)] =
                s.M * std::sqrt(s.tx_aperture_m2 * s.rx_aperture_m2 * spec.modes[static_cast<std::size_t>(m)].nu_sq / g) /
                area;
        std::sort(expected_sigma.rbegin(), expected_sigma.rend());

        std::vector<ConvergencePoint> out;
        for (int N : cell_counts)
        {
            const auto ptx = build_partition(s.disc_radius_m, N,
                                             s.independent_partitions ? std::optional(rng::derive(s.seed, 1)) : std::nullopt);
            const auto prx = build_partition(s.disc_radius_m, N,
                                             s.independent_partitions ? std::optional(rng::derive(s.seed, 2)) : std::nullopt);
            const auto tx = build_simple_antennas(ptx, spec, s.M, s.tx_aperture_m2, AntennaSide::Transmit);
            const auto rx = build_simple_antennas(prx, spec, s.M, s.rx_aperture_m2, AntennaSide::Receive);
            const auto H = discrete_channel_matrix(tx, rx, s.wavelength_m, s.range_m, exec);
            const auto sv = singular_spectrum(H);

            ConvergencePoint pt;
            pt.N = N;
            pt.xi_discrete = uniform_spectral_efficiency(sv, s.gamma, g, s.M);
            pt.xi_limit = limit;
            pt.gap = std::abs(pt.xi_discrete - limit) / limit;
            pt.gram_defect = std::max(tx.gram_defect, rx.gram_defect);
            for (int m = 0; m < s.M; ++m)
            {
                const double got = std::sqrt(sv[static_cast<std::size_t>(m)]);
                const double want = expected_sigma[static_cast<std::size_t>(m)];
                pt.max_singular_error = std::max(pt.max_singular_error, std::abs(got - want) / want);
            }
            out.push_back(pt);
        }
        return out;
    }

    bool gap_tail_non_increasing(const std::vector<ConvergencePoint> &curve)
    {
        const std::size_t n = curve.size();
        for (std::size_t i = n >= 3 ? n - 2 : 1; i < n; ++i)
            if (curve[i].gap > curve[i - 1].gap)
                return false;
        return true;
    }

    CsvTable to_csv(const std::vector<ConvergencePoint> &curve)
    {
        CsvTable t{"convergence", {"N", "xi_discrete", "xi_limit", "gap", "gram_defect"}, {}};
        for (const auto &p : curve)
            t.add_row({static_cast<std::int64_t>(p.N), p.xi_discrete, p.xi_limit, p.gap, p.gram_defect});
        return t;
    }
} // namespace spacemimo
