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

#include "spacemimo/linkbudget.hpp"
#include "spacemimo/numerics.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spacemimo
{
    // Flat key=value scenario file. '#' starts a comment, blank lines are ignored, keys are unique and
    // must be known. Values are parsed lazily by the typed getters so a subcommand only demands the keys
    // it uses; every parse failure names the key and the line.
    //
    //   wavelength_m=0.01           range_m=3.8e8            tx_aperture_m2=...   rx_aperture_m2=...
    //   loss_factor=1               power_W=...              bandwidth_Hz=...     noise_psd_W_per_Hz=...
    //   M=4
    //   disc_radius_m=... | area_over_lambda_d=...           (exactly one)
    //   trials=2000  seed=1  execution=parallel|serial
    //   gamma_g, M_list, S_over_ld_list, gamma_g_list, c_list (comma-separated lists)
    //   cell_counts, independent_partitions, partition_seed, quadrature_order, max_azimuthal_order,
    //   radial_modes_per_order, f_trials
    class ScenarioConfig
    {
    public:
        static ScenarioConfig parse(std::string_view text);
        static ScenarioConfig load(const std::filesystem::path &path);

        // Command-line override (line 0 in diagnostics).
        void set(const std::string &key, const std::string &value);

        bool has(const std::string &key) const { return entries_.count(key) != 0; }

        double get_double(const std::string &key) const;
        double get_double(const std::string &key, double fallback) const;
        long long get_int(const std::string &key) const;
        long long get_int(const std::string &key, long long fallback) const;
        std::uint64_t get_u64(const std::string &key, std::uint64_t fallback) const;
        bool get_bool(const std::string &key, bool fallback) const;
        std::string get_string(const std::string &key, const std::string &fallback) const;
        std::vector<double> get_double_list(const std::string &key) const;
        std::vector<int> get_int_list(const std::string &key) const;

        LinkBudget link_budget() const;         // all eight link-budget keys (loss_factor defaults to 1)
        int M() const;                          // >= 1
        double disc_radius_m(const LinkBudget &budget) const; // exactly one geometry key
        std::size_t trials(std::size_t fallback) const;
        std::uint64_t seed() const;
        Execution execution() const;

        // Sorted key=value lines; stable input to fingerprints.
        std::string canonical() const;

    private:
        struct Entry
        {
            std::string value;
            int line = 0;
        };
        const Entry &require(const std::string &key) const;
        std::map<std::string, Entry> entries_;
    };

    // Keys accepted by ScenarioConfig.
    const std::vector<std::string> &known_config_keys();
} // namespace spacemimo
