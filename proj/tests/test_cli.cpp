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

#include "spacemimo/capacity.hpp"
#include "spacemimo/cli.hpp"
#include "spacemimo/csv.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef SPACEMIMO_CLI_PATH
#error "SPACEMIMO_CLI_PATH must point at the command-line binary"
#endif

using namespace spacemimo;
namespace fs = std::filesystem;

namespace
{
    const char *kBudget = "wavelength_m=0.01\nrange_m=1e6\ntx_aperture_m2=2\nrx_aperture_m2=2\nloss_factor=1\n"
                          "power_W=1\nbandwidth_Hz=1e6\nnoise_psd_W_per_Hz=4e-16\n";

    fs::path scratch(const std::string &name)
    {
        const auto p = fs::temp_directory_path() / ("spacemimo_cli_" + name);
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }

    fs::path write_config(const fs::path &dir, const std::string &text)
    {
        const auto p = dir / "scenario.cfg";
        std::ofstream(p, std::ios::binary) << text;
        return p;
    }

    int run_cli(const std::string &args, const fs::path &dir)
    {
        const std::string cmd = std::string(SPACEMIMO_CLI_PATH) + " " + args + " 2> " + (dir / "stderr.txt").string();
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string slurp(const fs::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("siso writes one row with log2(1 + gamma g)")
    {
        const auto dir = scratch("siso");
        const auto cfg = write_config(dir, kBudget);
        REQUIRE(run_cli("siso --config " + cfg.string() + " --out " + (dir / "out").string(), dir) == 0);
        const auto t = parse_csv(dir / "out" / "siso.csv");
        CHECK(t.schema == "siso");
        REQUIRE(t.rows.size() == 1);
        const double gg = std::get<double>(t.rows[0][2]);
        CHECK(std::get<double>(t.rows[0][4]) == doctest::Approx(std::log2(1.0 + gg)).epsilon(1e-15));
        CHECK(slurp(dir / "out" / "siso.csv").rfind("# schema=siso/1\n", 0) == 0);
    }

    TEST_CASE("design at gamma g = 100 t* picks ten streams")
    {
        const auto dir = scratch("design");
        std::ostringstream cfg;
        cfg.precision(17);
        cfg << "gamma_g=" << 100.0 * stationary_snr_constant() << "\nwavelength_m=0.01\nrange_m=1e6\n";
        const auto path = write_config(dir, cfg.str());
        REQUIRE(run_cli("design --config " + path.string() + " --out " + (dir / "out").string(), dir) == 0);
        const auto t = parse_csv(dir / "out" / "design.csv");
        REQUIRE(t.rows.size() == 1);
        CHECK(std::get<double>(t.rows[0][6]) == 10.0); // M_opt
        CHECK(std::get<double>(t.rows[0][12]) == doctest::Approx(std::sqrt(10.0) * 1e4));
    }

    TEST_CASE("bounds on a grid with M <= Mscript has no violations")
    {
        const auto dir = scratch("bounds");
        const auto cfg = write_config(dir, std::string(kBudget) + "area_over_lambda_d=4\nM_list=1,2,4,8,16\ntrials=200\n");
        REQUIRE(run_cli("bounds --config " + cfg.string() + " --out " + (dir / "out").string(), dir) == 0);
        const auto t = parse_csv(dir / "out" / "scan.csv");
        REQUIRE(t.rows.size() == 5);
        for (const auto &row : t.rows)
            CHECK(std::get<double>(row[9]) == 0.0);
    }

    TEST_CASE("exit codes and error records")
    {
        const auto dir = scratch("errors");
        const auto out = (dir / "out").string();

        auto bad = write_config(dir, "M=4\nwhat=1\n");
        CHECK(run_cli("siso --config " + bad.string() + " --out " + out, dir) == kExitConfig);
        auto rec = nlohmann::json::parse(slurp(dir / "stderr.txt"));
        CHECK(rec["exit_code"] == 2);
        CHECK(rec["key"] == "what");
        CHECK(rec["line"] == 2);

        // g >= 1 violates the budget invariant
        bad = write_config(dir, "wavelength_m=1\nrange_m=1\ntx_aperture_m2=2\nrx_aperture_m2=2\npower_W=1\n"
                                "bandwidth_Hz=1\nnoise_psd_W_per_Hz=1\n");
        CHECK(run_cli("siso --config " + bad.string() + " --out " + out, dir) == kExitInvariant);
        rec = nlohmann::json::parse(slurp(dir / "stderr.txt"));
        CHECK(rec["kind"] == "invariant");
        CHECK(fs::exists(dir / "out" / "error.json"));

        // quadrature far too coarse for c: the eigen-solve cannot converge
        bad = write_config(dir, std::string(kBudget) + "area_over_lambda_d=30\nquadrature_order=8\n");
        CHECK(run_cli("prolate --config " + bad.string() + " --out " + out, dir) == kExitInvariant);

        CHECK(run_cli("siso --config " + (dir / "missing.cfg").string() + " --out " + out, dir) == kExitConfig);
        CHECK(run_cli("nonsense --config x --out y", dir) == kExitConfig);
    }

    TEST_CASE("identical config and seed give byte-identical files")
    {
        const auto dir = scratch("determinism");
        const auto cfg = write_config(dir, std::string(kBudget) + "M=4\narea_over_lambda_d=3\ntrials=100\n");
        for (const char *cmd : {"mimo-sample", "ergodic"})
        {
            REQUIRE(run_cli(std::string(cmd) + " --config " + cfg.string() + " --out " + (dir / "a").string() +
                                " --seed 5",
                            dir) == 0);
            REQUIRE(run_cli(std::string(cmd) + " --config " + cfg.string() + " --out " + (dir / "b").string() +
                                " --seed 5",
                            dir) == 0);
        }
        std::size_t files = 0;
        for (const auto &e : fs::directory_iterator(dir / "a"))
        {
            ++files;
            CHECK(slurp(e.path()) == slurp(dir / "b" / e.path().filename()));
        }
        CHECK(files == 8);
        REQUIRE(run_cli("ergodic --config " + cfg.string() + " --out " + (dir / "c").string() + " --seed 6", dir) == 0);
        CHECK(slurp(dir / "a" / "ergodic.csv") != slurp(dir / "c" / "ergodic.csv"));
    }
}
