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

#include "spacemimo/channel.hpp"
#include "spacemimo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>

namespace spacemimo
{
    namespace
    {
        constexpr long double two_pi_l = 6.283185307179586476925286766559L;

        // exp(i 2 pi cycles), with the integer part of cycles removed in extended precision so that
        // path lengths of 1e5+ wavelengths keep their sub-wavelength phase.
        std::complex<double> unit_phasor(long double cycles)
        {
            const long double frac = cycles - std::nearbyintl(cycles);
            const double phase = static_cast<double>(two_pi_l * frac);
            return {std::cos(phase), std::sin(phase)};
        }

        void require_positive(double v, const char *who)
        {
            if (!(v > 0.0) || !std::isfinite(v))
                throw InvariantError(std::string(who) + ": wavelength and range must be finite and > 0");
        }
    } // namespace

    void ChannelMatrix::validate() const
    {
        if (entries.rows() < 1 || entries.rows() != entries.cols())
            throw InvariantError("ChannelMatrix: must be square with M >= 1");
        if (kind == ChannelKind::Discretized)
            return;
        for (Eigen::Index j = 0; j < entries.cols(); ++j)
            for (Eigen::Index i = 0; i < entries.rows(); ++i)
                if (std::abs(std::abs(entries(i, j)) - 1.0) > 1e-12)
                    throw InvariantError("ChannelMatrix: entry is not unit modulus");
    }

    EigenSpectrum::EigenSpectrum(std::vector<double> values, SpectrumContext context)
        : values_(std::move(values)), context_(context)
    {
        for (double v : values_)
            if (!(v >= 0.0) || !std::isfinite(v))
                throw InvariantError("EigenSpectrum: values must be finite and >= 0");
        std::stable_sort(values_.begin(), values_.end(), std::greater<>());
        norm_sq_ = 0.0;
        for (double v : values_)
            norm_sq_ += v;
    }

    ChannelMatrix build_full_matrix(const NodeCluster &tx, const NodeCluster &rx, double range_m, double wavelength_m)
    {
        require_positive(wavelength_m, "build_full_matrix");
        require_positive(range_m, "build_full_matrix");
        tx.validate();
        rx.validate();
        if (tx.count() != rx.count())
            throw InvariantError("build_full_matrix: tx and rx clusters must have the same M");
        const auto m = static_cast<Eigen::Index>(tx.count());

        ChannelMatrix out;
        out.kind = ChannelKind::Full;
        out.meta = {wavelength_m, range_m, "tx", "rx"};
        out.entries.resize(m, m);
        const long double lam = wavelength_m, lam_d = static_cast<long double>(wavelength_m) * range_m;
        for (Eigen::Index j = 0; j < m; ++j)
        {
            const Point3 &u = tx.nodes[static_cast<std::size_t>(j)];
            for (Eigen::Index i = 0; i < m; ++i)
            {
                const Point3 &v = rx.nodes[static_cast<std::size_t>(i)];
                (void)fresnel_distance(u, v, range_m); // range-ratio precondition
                // The three factors: common x phase, quadratic self terms, transverse Fourier term.
                const long double rho_r = static_cast<long double>(v.y) * v.y + static_cast<long double>(v.z) * v.z;
                const long double rho_t = static_cast<long double>(u.y) * u.y + static_cast<long double>(u.z) * u.z;
                const long double cross = static_cast<long double>(v.y) * u.y + static_cast<long double>(v.z) * u.z;
                const long double cycles = (static_cast<long double>(v.x) - u.x) / lam + (rho_r + rho_t) / (2.0L * lam_d) -
                                           cross / lam_d;
                out.entries(i, j) = unit_phasor(-cycles);
            }
        }
        return out;
    }

    ChannelMatrix build_reduced_matrix(const DiscCluster &tx, const DiscCluster &rx, double wavelength_m,
                                       double range_m)
    {
        require_positive(wavelength_m, "build_reduced_matrix");
        require_positive(range_m, "build_reduced_matrix");
        tx.validate();
        rx.validate();
        if (tx.count() != rx.count())
            throw InvariantError("build_reduced_matrix: tx and rx clusters must have the same M");
        const auto m = static_cast<Eigen::Index>(tx.count());

        ChannelMatrix out;
        out.kind = ChannelKind::Reduced;
        out.meta = {wavelength_m, range_m, "tx", "rx"};
        out.entries.resize(m, m);
        const long double lam_d = static_cast<long double>(wavelength_m) * range_m;
        for (Eigen::Index j = 0; j < m; ++j)
        {
            const Point2 &u = tx.nodes[static_cast<std::size_t>(j)];
            for (Eigen::Index i = 0; i < m; ++i)
            {
                const Point2 &v = rx.nodes[static_cast<std::size_t>(i)];
                const long double cross = static_cast<long double>(v.y) * u.y + static_cast<long double>(v.z) * u.z;
                out.entries(i, j) = unit_phasor(cross / lam_d);
            }
        }
        return out;
    }

    HadamardFactors hadamard_factors(const NodeCluster &tx, const NodeCluster &rx, double wavelength_m,
                                     double range_m)
    {
        require_positive(wavelength_m, "hadamard_factors");
        require_positive(range_m, "hadamard_factors");
        const long double lam = wavelength_m, two_d = 2.0L * range_m;
        auto make = [&](const NodeCluster &c, long double sign) {
            Eigen::VectorXcd h(static_cast<Eigen::Index>(c.count()));
            for (std::size_t k = 0; k < c.count(); ++k)
            {
                const Point3 &p = c.nodes[k];
                const long double rho = static_cast<long double>(p.y) * p.y + static_cast<long double>(p.z) * p.z;
                // conj(exp(i 2 pi / lambda (x +/- rho^2 / 2d)))
                h(static_cast<Eigen::Index>(k)) = unit_phasor(-(p.x + sign * rho / two_d) / lam);
            }
            return h;
        };
        return {make(tx, -1.0L), make(rx, +1.0L)};
    }

    Eigen::MatrixXcd reassemble_full(const HadamardFactors &f, const Eigen::MatrixXcd &reduced)
    {
        return f.h_rx.asDiagonal() * reduced * f.h_tx.conjugate().asDiagonal();
    }

    EigenSpectrum singular_spectrum(const Eigen::MatrixXcd &m)
    {
        if (m.rows() < 1 || m.cols() < 1)
            throw InvariantError("singular_spectrum: empty matrix");
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(m); // values only; falls back to Jacobi for small blocks
        if (svd.info() != Eigen::Success)
            throw NumericalError("singular_spectrum", "SVD did not converge");
        const auto &sv = svd.singularValues();
        std::vector<double> values(static_cast<std::size_t>(sv.size()));
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            values[static_cast<std::size_t>(i)] = sv(i) * sv(i);
        return EigenSpectrum(std::move(values), SpectrumContext::MatrixSingular);
    }

    EigenSpectrum singular_spectrum(const ChannelMatrix &m)
    {
        m.validate();
        return singular_spectrum(m.entries);
    }

    CsvTable to_csv(const ChannelMatrix &m)
    {
        CsvTable t{"channel_matrix", {"i", "j", "re", "im"}, {}};
        for (Eigen::Index i = 0; i < m.entries.rows(); ++i)
            for (Eigen::Index j = 0; j < m.entries.cols(); ++j)
                t.add_row({static_cast<std::int64_t>(i), static_cast<std::int64_t>(j), m.entries(i, j).real(),
                           m.entries(i, j).imag()});
        return t;
    }

    CsvTable to_csv(const EigenSpectrum &s)
    {
        CsvTable t{"spectrum", {"rank", "value"}, {}};
        for (std::size_t i = 0; i < s.size(); ++i)
            t.add_row({static_cast<std::int64_t>(i + 1), s[i]});
        return t;
    }
} // namespace spacemimo
