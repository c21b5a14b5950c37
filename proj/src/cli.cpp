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

#include "spacemimo/cli.hpp"
#include "spacemimo/achievability.hpp"
#include "spacemimo/capacity.hpp"
#include "spacemimo/channel.hpp"
#include "spacemimo/csv.hpp"
#include "spacemimo/errors.hpp"
#include "spacemimo/geometry.hpp"
#include "spacemimo/moments.hpp"
#include "spacemimo/montecarlo.hpp"
#include "spacemimo/prolate.hpp"
#include "spacemimo/rng.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>

namespace spacemimo
{
    namespace
    {
        namespace fs = std::filesystem;
        constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

        std::string hex64(std::uint64_t v)
        {
            char buf[19];
            std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
            return buf;
        }

        struct Writer
        {
            fs::path dir;
            std::vector<fs::path> written;
            void operator()(const CsvTable &t, const std::string &name)
            {
                written.push_back(dir / name);
                emit_csv(t, written.back());
            }
        };

        void warn_regime(const LinkBudget &b, std::ostream &log)
        {
            if (b.weak_deep_space())
                log << "warning: channel gain g = " << format_double(b.channel_gain())
                    << " > 1e-3; the phase-only channel model is a weak approximation here\n";
        }

        void warn_violations(const std::vector<ScanRow> &rows, std::ostream &log)
        {
            std::size_t total = 0;
            double worst = -std::numeric_limits<double>::infinity();
            for (const auto &r : rows)
            {
                total += r.ub_violations;
                worst = std::max(worst, r.max_ub_excess);
                if (!r.lb_ok)
                    log << "warning: scenario " << r.scenario_id << " mean falls below the lower bound by more than 3 se\n";
            }
            if (total > 0)
                log << "warning: " << total << " trial(s) exceed the per-realization upper bound (largest excess "
                    << format_double(worst) << " b/s/Hz)\n";
        }

        double area_over_ld(double R, double lambda_d) { return std::numbers::pi * R * R / lambda_d; }

        ProlateProblem prolate_problem(const ScenarioConfig &cfg, double c)
        {
            auto p = ProlateProblem::for_c(c);
            p.quadrature_order = static_cast<int>(cfg.get_int("quadrature_order", p.quadrature_order));
            p.max_azimuthal_order = static_cast<int>(cfg.get_int("max_azimuthal_order", p.max_azimuthal_order));
            p.radial_modes_per_order =
                static_cast<int>(cfg.get_int("radial_modes_per_order", p.radial_modes_per_order));
            return p;
        }

        void cmd_siso(const ScenarioConfig &cfg, Writer &w, std::ostream &log)
        {
            const auto b = cfg.link_budget();
            warn_regime(b, log);
            const double gamma = b.input_snr(), g = b.channel_gain();
            CsvTable t{"siso", {"gamma", "g", "gamma_g", "lambda_d", "xi1", "weak_deep_space"}, {}};
            t.add_row({gamma, g, gamma * g, b.lambda_d(), siso_spectral_efficiency(gamma, g),
                       static_cast<std::int64_t>(b.weak_deep_space())});
            w(t, "siso.csv");
        }

        void cmd_mimo_sample(const ScenarioConfig &cfg, Writer &w, std::ostream &log)
        {
            const auto b = cfg.link_budget();
            warn_regime(b, log);
            const int M = cfg.M();
            const double R = cfg.disc_radius_m(b);
            const auto &p = b.params();
            const auto seed = cfg.seed();

            const auto tx = sample_ball_cluster(R, static_cast<std::size_t>(M), rng::derive(seed, 1));
            const auto rx = sample_ball_cluster(R, static_cast<std::size_t>(M), rng::derive(seed, 2));
            const auto full = build_full_matrix(tx, rx, p.range_m, p.wavelength_m);
            const auto reduced = build_reduced_matrix(project_to_disc(tx), project_to_disc(rx), p.wavelength_m, p.range_m);
            const auto s_full = singular_spectrum(full);
            const auto s_red = singular_spectrum(reduced);

            double worst = 0.0;
            for (std::size_t i = 0; i < s_full.size(); ++i)
                worst = std::max(worst, std::abs(s_full[i] - s_red[i]) / s_red[0]);

            const double gamma = b.input_snr(), g = b.channel_gain();
            const double area = std::numbers::pi * R * R;
            const auto in = CapacityInputs::from_geometry(gamma, g, M, area, b.lambda_d());

            w(to_csv(tx), "tx_nodes.csv");
            w(to_csv(rx), "rx_nodes.csv");
            w(to_csv(full), "channel_full.csv");
            w(to_csv(reduced), "channel_reduced.csv");
            w(to_csv(s_full), "spectrum_full.csv");
            w(to_csv(s_red), "spectrum_reduced.csv");
            CsvTable t{"mimo_sample",
                       {"M", "S_over_ld", "Mscript", "gamma_g", "xi_uniform", "xi_waterfilling", "ub14", "spectra_rel_diff"},
                       {}};
            t.add_row({static_cast<std::int64_t>(M), area / b.lambda_d(), static_cast<std::int64_t>(in.Mscript),
                       gamma * g, uniform_spectral_efficiency(s_red, gamma, g, M),
                       waterfilling_spectral_efficiency(s_red, gamma, g, M), spectral_efficiency_upper_bound(in), worst});
            w(t, "mimo_sample.csv");
        }

        void cmd_ergodic(const ScenarioConfig &cfg, Writer &w, std::ostream &log)
        {
            const auto b = cfg.link_budget();
            warn_regime(b, log);
            const ErgodicScenario s{cfg.M(), area_over_ld(cfg.disc_radius_m(b), b.lambda_d()),
                                    b.input_snr() * b.channel_gain()};
            const auto e = ergodic_uniform_xi(s, cfg.trials(2000), cfg.seed(), cfg.execution());
            const auto in = CapacityInputs::normalized(s.gamma_g, s.M, s.S_over_ld);
            CsvTable t{"ergodic",
                       {"fingerprint", "M", "S_over_ld", "gamma_g", "trials", "mean_xi", "se", "batched", "lb15", "ub14",
                        "ub_violations", "max_ub_excess"},
                       {}};
            t.add_row({hex64(e.fingerprint), static_cast<std::int64_t>(s.M), s.S_over_ld, s.gamma_g,
                       static_cast<std::int64_t>(e.trials), e.mean_xi, e.std_error, static_cast<std::int64_t>(e.batched),
                       s.S_over_ld >= 1.0 ? expected_spectral_efficiency_lower_bound(in) : kNaN,
                       spectral_efficiency_upper_bound(in), static_cast<std::int64_t>(e.ub_violations), e.max_ub_excess});
            w(t, "ergodic.csv");
            if (e.ub_violations > 0)
                log << "warning: " << e.ub_violations << " trial(s) exceed the per-realization upper bound\n";
        }

        void cmd_bounds(const ScenarioConfig &cfg, Writer &w, std::ostream &log)
        {
            const auto b = cfg.link_budget();
            warn_regime(b, log);
            const double S = area_over_ld(cfg.disc_radius_m(b), b.lambda_d());
            const double gg = b.input_snr() * b.channel_gain();
            const auto Ms = cfg.has("M_list") ? cfg.get_int_list("M_list") : std::vector<int>{cfg.M()};

            CsvTable t{"bounds", {"M", "Mscript", "S_over_ld", "gamma_g", "ub14", "lb15", "det_cap", "lb_tight"}, {}};
            std::vector<ErgodicScenario> grid;
            for (int M : Ms)
            {
                const auto in = CapacityInputs::normalized(gg, M, S);
                const bool lb = S >= 1.0;
                t.add_row({static_cast<std::int64_t>(M), static_cast<std::int64_t>(in.Mscript), S, gg,
                           spectral_efficiency_upper_bound(in), lb ? expected_spectral_efficiency_lower_bound(in) : kNaN,
                           deterministic_capacity(in), lb ? assembled_lower_bound(M, gg, 1.0, S, 1.0).tight : kNaN});
                grid.push_back({M, S, gg});
            }
            w(t, "bounds.csv");
            const auto rows = bound_scan(grid, cfg.trials(2000), cfg.seed(), cfg.execution());
            w(to_csv(rows), "scan.csv");
            warn_violations(rows, log);
        }

        void cmd_prolate(const ScenarioConfig &cfg, Writer &w, std::ostream &)
        {
            const auto b = cfg.link_budget();
            const auto &p = b.params();
            const double R = cfg.disc_radius_m(b);
            const double c = 2.0 * std::numbers::pi * R * R / b.lambda_d();
            const auto spec = assemble_operator_spectrum(prolate_problem(cfg, c), p.loss_factor, R, p.wavelength_m,
                                                         p.range_m, cfg.execution());
            w(to_csv(spec), "operator_spectrum.csv");
            const double area = std::numbers::pi * R * R;
            CsvTable t{"prolate_summary",
                       {"c", "Mscript", "significant_modes", "alpha_sq_total", "nu_sq_total", "nu_sq_expected", "orders",
                        "truncated"},
                       {}};
            t.add_row({c, static_cast<std::int64_t>(degrees_of_freedom(area, b.lambda_d())),
                       static_cast<std::int64_t>(significant_mode_count(spec.spectrum, p.loss_factor)),
                       spec.alpha_sq_total, spec.nu_sq_total,
                       p.loss_factor * area * area / (b.lambda_d() * b.lambda_d()),
                       static_cast<std::int64_t>(spec.radial.size()), static_cast<std::int64_t>(spec.truncated)});
            w(t, "prolate_summary.csv");
        }

        void cmd_achievability(const ScenarioConfig &cfg, Writer &w, std::ostream &log)
        {
            const auto b = cfg.link_budget();
            warn_regime(b, log);
            const auto &p = b.params();
            const double R = cfg.disc_radius_m(b);
            const double c = 2.0 * std::numbers::pi * R * R / b.lambda_d();
            const auto exec = cfg.execution();
            const auto spec = assemble_operator_spectrum(prolate_problem(cfg, c), p.loss_factor, R, p.wavelength_m,
                                                         p.range_m, exec);
            ConvergenceSetup s;
            s.wavelength_m = p.wavelength_m;
            s.range_m = p.range_m;
            s.disc_radius_m = R;
            s.tx_aperture_m2 = p.tx_aperture_m2;
            s.rx_aperture_m2 = p.rx_aperture_m2;
            s.loss_factor = p.loss_factor;
            s.gamma = b.input_snr();
            s.M = cfg.M();
            s.independent_partitions = cfg.get_bool("independent_partitions", false);
            s.seed = cfg.get_u64("partition_seed", cfg.seed());
            const auto curve = convergence_curve(s, spec, cfg.get_int_list("cell_counts"), exec);
            w(to_csv(curve), "convergence.csv");
            if (!gap_tail_non_increasing(curve))
                log << "warning: gap increases over the last three cell counts\n";
        }

        void cmd_design(const ScenarioConfig &cfg, Writer &w, std::ostream &log)
        {
            double gg = 0.0;
            if (cfg.has("gamma_g"))
                gg = cfg.get_double("gamma_g");
            else
            {
                const auto b = cfg.link_budget();
                warn_regime(b, log);
                gg = b.input_snr() * b.channel_gain();
            }
            const auto d = optimal_stream_count(gg, 1.0);
            double area = kNaN;
            if (cfg.has("wavelength_m") && cfg.has("range_m"))
                area = required_array_area(d.M_opt, cfg.get_double("wavelength_m"), cfg.get_double("range_m"));
            CsvTable t{"design",
                       {"gamma_g", "t_star", "t_star_printed", "x_opt", "M_l", "M_u", "M_opt", "xi", "x_opt_over_sqrt_gg",
                        "xi_over_sqrt_gg_bits", "xi_over_sqrt_gg_nats", "coefficient_printed", "required_area_m2"},
                       {}};
            t.add_row({gg, d.t_star, kPrintedStationaryConstant, d.x_opt, static_cast<std::int64_t>(d.M_l),
                       static_cast<std::int64_t>(d.M_u), static_cast<std::int64_t>(d.M_opt), d.xi, d.x_opt_over_sqrt_gg,
                       d.xi_over_sqrt_gg_bits, d.xi_over_sqrt_gg_nats, kPrintedCapacityCoefficient, area});
            w(t, "design.csv");
        }

        void cmd_moments(const ScenarioConfig &cfg, Writer &w, std::ostream &)
        {
            const auto cs = cfg.get_double_list("c_list");
            const auto Ms = cfg.get_int_list("M_list");
            const double gg = cfg.get_double("gamma_g", 100.0);
            const auto f_trials = static_cast<std::size_t>(cfg.get_int("f_trials", 200000));
            const auto trials = cfg.trials(10000);
            std::vector<MomentReport> rows;
            for (double c : cs)
                for (int M : Ms)
                    rows.push_back(moment_report(c, M, gg, f_trials, trials,
                                                 rng::derive(cfg.seed(), rng::fnv1a(format_double(c))), cfg.execution()));
            w(to_csv(rows), "moments.csv");
        }

        void cmd_scan(const ScenarioConfig &cfg, Writer &w, std::ostream &log)
        {
            std::vector<ErgodicScenario> grid;
            for (int M : cfg.get_int_list("M_list"))
                for (double S : cfg.get_double_list("S_over_ld_list"))
                    for (double gg : cfg.get_double_list("gamma_g_list"))
                        grid.push_back({M, S, gg});
            const auto rows = bound_scan(grid, cfg.trials(2000), cfg.seed(), cfg.execution());
            w(to_csv(rows), "scan.csv");
            warn_violations(rows, log);
        }

        void write_error(const fs::path &out_dir, const nlohmann::json &record, std::ostream &err)
        {
            err << record.dump() << "\n";
            std::error_code ec;
            if (out_dir.empty() || !fs::is_directory(out_dir, ec))
                return;
            std::ofstream f(out_dir / "error.json", std::ios::binary);
            if (f)
                f << record.dump(2) << "\n";
        }
    } // namespace

    const std::vector<std::pair<std::string, Subcommand>> &subcommand_names()
    {
        static const std::vector<std::pair<std::string, Subcommand>> names = {
            {"siso", Subcommand::Siso},       {"mimo-sample", Subcommand::MimoSample},
            {"ergodic", Subcommand::Ergodic}, {"bounds", Subcommand::Bounds},
            {"prolate", Subcommand::Prolate}, {"achievability", Subcommand::Achievability},
            {"design", Subcommand::Design},   {"moments", Subcommand::Moments},
            {"scan", Subcommand::Scan}};
        return names;
    }

    std::vector<fs::path> run_subcommand(Subcommand cmd, const ScenarioConfig &cfg, const fs::path &out_dir,
                                         std::ostream &log)
    {
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        if (ec)
            throw std::runtime_error("cannot create output directory '" + out_dir.string() + "': " + ec.message());
        Writer w{out_dir, {}};
        switch (cmd)
        {
        case Subcommand::Siso: cmd_siso(cfg, w, log); break;
        case Subcommand::MimoSample: cmd_mimo_sample(cfg, w, log); break;
        case Subcommand::Ergodic: cmd_ergodic(cfg, w, log); break;
        case Subcommand::Bounds: cmd_bounds(cfg, w, log); break;
        case Subcommand::Prolate: cmd_prolate(cfg, w, log); break;
        case Subcommand::Achievability: cmd_achievability(cfg, w, log); break;
        case Subcommand::Design: cmd_design(cfg, w, log); break;
        case Subcommand::Moments: cmd_moments(cfg, w, log); break;
        case Subcommand::Scan: cmd_scan(cfg, w, log); break;
        }
        return w.written;
    }

    int run(Subcommand cmd, const fs::path &config_path, const fs::path &out_dir, std::optional<std::size_t> trials,
            std::optional<std::uint64_t> seed, std::ostream &err)
    {
        nlohmann::json record{{"status", "error"}};
        try
        {
            auto cfg = ScenarioConfig::load(config_path);
            if (trials)
                cfg.set("trials", std::to_string(*trials));
            if (seed)
                cfg.set("seed", std::to_string(*seed));
            run_subcommand(cmd, cfg, out_dir, err);
            return kExitOk;
        }
        catch (const ConfigError &e)
        {
            record["exit_code"] = kExitConfig;
            record["kind"] = "config";
            record["key"] = e.key();
            record["line"] = e.line();
            record["message"] = e.what();
        }
        catch (const InvariantError &e)
        {
            record["exit_code"] = kExitInvariant;
            record["kind"] = "invariant";
            record["message"] = e.what();
        }
        catch (const NumericalError &e)
        {
            record["exit_code"] = kExitNumerical;
            record["kind"] = "numerical";
            record["operation"] = e.operation();
            record["message"] = e.what();
        }
        catch (const std::exception &e)
        {
            record["exit_code"] = 1;
            record["kind"] = "io";
            record["message"] = e.what();
        }
        write_error(out_dir, record, err);
        return record["exit_code"].get<int>();
    }

    int cli_main(int argc, char **argv)
    {
        CLI::App app{"spacemimo: capacity analysis for long-range free-space MIMO links"};
        app.require_subcommand(1);
        std::string config, out;
        std::optional<std::size_t> trials;
        std::optional<std::uint64_t> seed;
        std::optional<Subcommand> chosen;
        for (const auto &[name, cmd] : subcommand_names())
        {
            auto *sub = app.add_subcommand(name);
            sub->add_option("--config", config, "key=value scenario file")->required();
            sub->add_option("--out", out, "output directory")->required();
            sub->add_option("--trials", trials, "overrides the trials key");
            sub->add_option("--seed", seed, "overrides the seed key");
            sub->callback([&chosen, c = cmd] { chosen = c; });
        }
        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::ParseError &e)
        {
            const int code = app.exit(e);
            return code == 0 ? kExitOk : kExitConfig;
        }
        return run(*chosen, config, out, trials, seed, std::cerr);
    }
} // namespace spacemimo
