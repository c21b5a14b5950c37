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
#include "spacemimo/geometry.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace spacemimo
{
    enum class ChannelKind
    {
        Full,       // exp(-i 2 pi d_ij / lambda), Fresnel path deviation
        Reduced,    // transverse Fourier kernel samples
        Discretized // simple-function antenna construction (not unit modulus)
    };

    struct ChannelMeta
    {
        double wavelength_m = 0.0;
        double range_m = 0.0;
        std::string tx_id;
        std::string rx_id;
    };

    // Normalized phase-only coupling matrix; the per-link amplitude sqrt(g / M^2) lives in the
    // capacity formulas, not in the entries. Rows index receive nodes, columns transmit nodes.
    struct ChannelMatrix
    {
        Eigen::MatrixXcd entries;
        ChannelKind kind = ChannelKind::Reduced;
        ChannelMeta meta;

        Eigen::Index size() const noexcept { return entries.rows(); }
        void validate() const; // square, M >= 1, unit modulus for Full/Reduced (1e-12)
    };

    enum class SpectrumContext
    {
        MatrixSingular, // squared singular values of a channel matrix
        OperatorEigen,  // |nu_n|^2 of the continuous operator
        RadialEigen     // beta^2 of one radial integral equation
    };

    // Non-increasing nonnegative values with their sum.
    class EigenSpectrum
    {
    public:
        EigenSpectrum() = default;
        EigenSpectrum(std::vector<double> values, SpectrumContext context); // sorts, validates

        const std::vector<double> &values() const noexcept { return values_; }
        double norm_sq() const noexcept { return norm_sq_; }
        SpectrumContext context() const noexcept { return context_; }
        std::size_t size() const noexcept { return values_.size(); }
        double operator[](std::size_t i) const { return values_[i]; }

    private:
        std::vector<double> values_;
        double norm_sq_ = 0.0;
        SpectrumContext context_ = SpectrumContext::MatrixSingular;
    };

    ChannelMatrix build_full_matrix(const NodeCluster &tx, const NodeCluster &rx, double range_m, double wavelength_m);

    ChannelMatrix build_reduced_matrix(const DiscCluster &tx, const DiscCluster &rx, double wavelength_m,
                                       double range_m);

    // Rank-one phase dyad of the Hadamard factorization H = (h_R h_T^*) o H_reduced.
    struct HadamardFactors
    {
        Eigen::VectorXcd h_tx;
        Eigen::VectorXcd h_rx;
    };

    HadamardFactors hadamard_factors(const NodeCluster &tx, const NodeCluster &rx, double wavelength_m,
                                     double range_m);

    // diag(h_R) * reduced * diag(conj(h_T))
    Eigen::MatrixXcd reassemble_full(const HadamardFactors &f, const Eigen::MatrixXcd &reduced);

    // Squared singular values via SVD. Throws NumericalError if the SVD does not converge.
    EigenSpectrum singular_spectrum(const ChannelMatrix &m);
    EigenSpectrum singular_spectrum(const Eigen::MatrixXcd &m);

    CsvTable to_csv(const ChannelMatrix &m); // i,j,re,im
    CsvTable to_csv(const EigenSpectrum &s); // rank,value
} // namespace spacemimo
