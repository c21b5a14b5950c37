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

#include "spacemimo/config.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace spacemimo
{
    enum class Subcommand
    {
        Siso,
        MimoSample,
        Ergodic,
        Bounds,
        Prolate,
        Achievability,
        Design,
        Moments,
        Scan
    };

    inline constexpr int kExitOk = 0;
    inline constexpr int kExitConfig = 2;
    inline constexpr int kExitInvariant = 3;
    inline constexpr int kExitNumerical = 4;

    const std::vector<std::pair<std::string, Subcommand>> &subcommand_names();

    // Runs one subcommand against an already-parsed configuration and writes its CSV files into out_dir
    // (created if needed). Returns the written paths. Throws the library's error types.
    std::vector<std::filesystem::path> run_subcommand(Subcommand cmd, const ScenarioConfig &cfg,
                                                      const std::filesystem::path &out_dir, std::ostream &log);

    // Loads the config, applies overrides, runs, and maps exceptions to exit codes. On failure a one-line
    // JSON error record goes to `err` and to out_dir/error.json.
    int run(Subcommand cmd, const std::filesystem::path &config_path, const std::filesystem::path &out_dir,
            std::optional<std::size_t> trials, std::optional<std::uint64_t> seed, std::ostream &err);

    // Full command line: <binary> <subcommand> --config <path> --out <dir> [--trials N] [--seed S]
    int cli_main(int argc, char **argv);
} // namespace spacemimo
