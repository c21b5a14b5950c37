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

// Acceptance runner: one PASS/FAIL line per criterion. Tolerances are pinned below.
#include "oracles.hpp"

#include "spacemimo/achievability.hpp"
#include "spacemimo/capacity.hpp"
#include "spacemimo/channel.hpp"
#include "spacemimo/geometry.hpp"
#include "spacemimo/linkbudget.hpp"
#include "spacemimo/moments.hpp"
#include "spacemimo/montecarlo.hpp"
#include "spacemimo/prolate.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifndef SPACEMIMO_CLI_PATH
#error "SPACEMIMO_CLI_PATH must point at the command-line binary"
#endif

using namespace spacemimo;
namespace fs = std::filesystem;

namespace tol
{
    constexpr double kSisoAbs = 1e-12;
    constexpr double kHadamardRel = 1e-9;
    constexpr double kSigmas = 3.0;
    constexpr double kAsymptoteRel = 0.05;
    constexpr double kFrobeniusRel = 0.005;
    constexpr double kSelfConvergence = 1e-6;
    constexpr double kPlateauRel = 0.30;
    constexpr double kLimitGap = 0.02;
    constexpr double kPartitionAgreement = 0.01;
    constexpr double kStationaryRel = 1e-6;
    constexpr double kPrintedCoefficientRel = 1e-3;
    constexpr double kBitsCoefficient = 1.1620;
    constexpr double kBitsCoefficientRel = 1e-3;
    constexpr double kScalingRel = 1e-8;
} // namespace tol

namespace
{
    struct Outcome
    {
        bool pass = false;
        std::string detail;
    };

    std::string fmt(const char *f, auto... args)
    {
        char buf[512];
        std::snprintf(buf, sizeof buf, f, args...);
        return buf;
    }

    // C1
    Outcome siso_consistency()
    {
        std::mt19937_64 gen(20261019);
        auto loguni = [&](double lo, double hi) {
            return std::exp(std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(gen));
        };
        const auto one = singular_spectrum(Eigen::MatrixXcd::Ones(1, 1));
        double worst = 0.0;
        int done = 0;
        while (done < 100)
        {
            LinkBudget::Params p;
            p.wavelength_m = loguni(1e-3, 1.0);
            p.range_m = loguni(1e4, 1e10);
            p.tx_aperture_m2 = loguni(1e-2, 1e2);
            p.rx_aperture_m2 = loguni(1e-2, 1e2);
            p.loss_factor = std::uniform_real_distribution<double>(0.1, 1.0)(gen);
            p.power_W = loguni(1e-3, 1e3);
            p.bandwidth_Hz = loguni(1e3, 1e9);
            p.noise_psd_W_per_Hz = loguni(1e-22, 1e-18);
            const double g = p.tx_aperture_m2 * p.rx_aperture_m2 * p.loss_factor /
                             std::pow(p.wavelength_m * p.range_m, 2);
            if (!(g < 1.0))
                continue;
            const LinkBudget b(p);
            const double gamma = p.power_W / (p.bandwidth_Hz * p.noise_psd_W_per_Hz);
            const double expected = std::log2(1.0 + gamma * g);
            worst = std::max(worst, std::abs(uniform_spectral_efficiency(one, b.input_snr(), b.channel_gain(), 1) - expected));
            ++done;
        }
        return {worst <= tol::kSisoAbs, fmt("100 budgets, max |xi - log2(1+gamma g)| = %.3g (tol %.0e)", worst, tol::kSisoAbs)};
    }

    // C2
    Outcome hadamard_spectra()
    {
        const double lambda = 0.01, radius = 1.0, d = 1e4 * radius;
        double worst = 0.0;
        for (int M = 1; M <= 64; ++M)
            for (std::uint64_t seed = 0; seed < 100; ++seed)
            {
                const auto tx = sample_ball_cluster(radius, static_cast<std::size_t>(M), 2 * seed + 1000 * M);
                const auto rx = sample_ball_cluster(radius, static_cast<std::size_t>(M), 2 * seed + 1 + 1000 * M);
                const auto a = singular_spectrum(build_full_matrix(tx, rx, d, lambda));
                const auto b = singular_spectrum(build_reduced_matrix(project_to_disc(tx), project_to_disc(rx), lambda, d));
                for (std::size_t i = 0; i < a.size(); ++i)
                    worst = std::max(worst, std::abs(a[i] - b[i]) / a[0]);
            }
        return {worst < tol::kHadamardRel,
                fmt("M 1..64 x 100 seeds, d/radius = 1e4, max |s_i - s~_i| / s_1 = %.3g (tol %.0e)", worst,
                    tol::kHadamardRel)};
    }

    std::vector<ErgodicScenario> bound_grid()
    {
        std::vector<ErgodicScenario> grid;
        for (int M = 1; M <= 16; ++M)
            for (double S : {1.0, 3.0, 10.0, 30.0})
                for (double gg : {1.0, 1e2, 1e4})
                    grid.push_back({M, S, gg});
        return grid;
    }

    // C3
    Outcome upper_bound_per_realization()
    {
        const std::size_t per = 60;
        std::size_t total = 0, violations = 0, bad_scenarios = 0, bad_small_M = 0;
        double worst = 0.0;
        std::string worst_id;
        for (const auto &s : bound_grid())
        {
            const auto e = ergodic_uniform_xi(s, per, 31);
            total += e.trials;
            violations += e.ub_violations;
            if (e.ub_violations > 0)
            {
                ++bad_scenarios;
                if (s.M <= degrees_of_freedom(s.S_over_ld, 1.0))
                    ++bad_small_M;
            }
            if (e.max_ub_excess > worst)
            {
                worst = e.max_ub_excess;
                worst_id = s.canonical();
            }
        }
        return {violations == 0,
                fmt("%zu trials, %zu violations in %zu scenarios (%zu with M <= Mscript), worst excess %.3g b/s/Hz at %s",
                    total, violations, bad_scenarios, bad_small_M, worst, worst_id.c_str())};
    }

    // C4
    Outcome lower_bound_in_mean()
    {
        const std::size_t per = 2000;
        std::size_t failures = 0, checked = 0;
        double worst_margin = 1e300;
        std::string worst_id;
        for (const auto &s : bound_grid())
        {
            const auto e = ergodic_uniform_xi(s, per, 41);
            const double lb = expected_spectral_efficiency_lower_bound(CapacityInputs::normalized(s.gamma_g, s.M, s.S_over_ld));
            const double tight = assembled_lower_bound(s.M, s.gamma_g, 1.0, s.S_over_ld, 1.0).tight;
            for (double bound : {lb, tight})
            {
                ++checked;
                const double margin = (e.mean_xi - (bound - tol::kSigmas * e.std_error));
                if (margin < 0.0)
                    ++failures;
                if (margin < worst_margin)
                {
                    worst_margin = margin;
                    worst_id = s.canonical();
                }
            }
        }
        return {failures == 0, fmt("%zu checks (closed and numeric-f bounds, %zu trials each), %zu below bound - 3 se; "
                                   "smallest margin %.3g at %s",
                                   checked, per, failures, worst_margin, worst_id.c_str())};
    }

    // C5
    Outcome large_region_asymptote()
    {
        const double gg = 1.0;
        double worst = 0.0;
        std::string parts;
        for (int M : {2, 4, 8})
        {
            const ErgodicScenario s{M, 30.0 * M, gg};
            const auto e = ergodic_uniform_xi(s, 4000, 51);
            const double target = M * std::log2(1.0 + gg / (double(M) * M));
            const double rel = std::abs(e.mean_xi - target) / target;
            worst = std::max(worst, rel);
            parts += fmt(" M=%d:%.4f/%.4f", M, e.mean_xi, target);
        }
        return {worst <= tol::kAsymptoteRel,
                fmt("gamma g = 1, |S|/(lambda d) = 30 M, 4000 trials, max rel dev %.4f (tol %.2f);%s", worst,
                    tol::kAsymptoteRel, parts.c_str())};
    }

    OperatorSpectrum unit_spectrum(double c)
    {
        const double R = std::sqrt(c / (2.0 * std::numbers::pi));
        return assemble_operator_spectrum(ProlateProblem::for_c(c), 1.0, R, 1.0, 1.0);
    }

    // C6
    Outcome frobenius_identities()
    {
        double worst_alpha = 0.0, worst_nu = 0.0, worst_conv = 0.0;
        for (double c : {2.0, 6.0, 12.0})
        {
            const auto s = unit_spectrum(c);
            const double area = std::numbers::pi * s.disc_radius_m * s.disc_radius_m;
            worst_alpha = std::max(worst_alpha, std::abs(s.alpha_sq_total / (std::numbers::pi * std::numbers::pi) - 1.0));
            worst_nu = std::max(worst_nu, std::abs(s.nu_sq_total / (area * area) - 1.0));
            const auto p = ProlateProblem::for_c(c);
            for (int N = 0; N < static_cast<int>(s.radial.size()); ++N)
                worst_conv = std::max(worst_conv, nystrom_self_convergence(N, c, p.quadrature_order, p.radial_modes_per_order));
        }
        const bool ok = worst_alpha <= tol::kFrobeniusRel && worst_nu <= tol::kFrobeniusRel && worst_conv < tol::kSelfConvergence;
        return {ok, fmt("c in {2,6,12}: max rel err sum|alpha|^2 %.3g, sum|nu|^2 %.3g (tol %.3g); "
                        "beta self-convergence %.3g (tol %.0e)",
                        worst_alpha, worst_nu, tol::kFrobeniusRel, worst_conv, tol::kSelfConvergence)};
    }

    // C7
    Outcome plateau_count()
    {
        bool ok = true;
        std::string parts;
        for (double c : {6.0, 8.0, 12.0})
        {
            const auto s = unit_spectrum(c);
            const auto count = static_cast<double>(significant_mode_count(s.spectrum, 1.0));
            const auto dof = static_cast<double>(degrees_of_freedom(c / 2.0, 1.0));
            ok = ok && std::abs(count - dof) <= tol::kPlateauRel * dof;
            parts += fmt(" c=%g:%g/%g", c, count, dof);
        }
        return {ok, fmt("half-plateau count / Mscript (tol +-%.0f%%):%s", 100.0 * tol::kPlateauRel, parts.c_str())};
    }

    // C8
    Outcome limit_convergence()
    {
        const double c = 6.0, lambda = 0.01, d = 1e6;
        const double R = std::sqrt(c * lambda * d / (2.0 * std::numbers::pi));
        const double area = std::numbers::pi * R * R;
        const auto spec = assemble_operator_spectrum(ProlateProblem::for_c(c), 1.0, R, lambda, d);
        const std::vector<int> cells{64, 256, 1024, 4096};
        bool ok = true;
        std::string parts;
        for (int M : {1, 4, 9})
        {
            ConvergenceSetup s;
            s.wavelength_m = lambda;
            s.range_m = d;
            s.disc_radius_m = R;
            s.tx_aperture_m2 = s.rx_aperture_m2 = 0.05 * area;
            s.gamma = 1e3 / (s.tx_aperture_m2 * s.rx_aperture_m2 / std::pow(lambda * d, 2));
            s.M = M;
            const auto shared = convergence_curve(s, spec, cells);
            s.independent_partitions = true;
            s.seed = 7;
            const auto indep = convergence_curve(s, spec, cells);
            const double gap = shared.back().gap;
            const bool tail = gap_tail_non_increasing(shared);
            const double agree = std::abs(indep.back().xi_discrete - shared.back().xi_discrete) / shared.back().xi_discrete;
            ok = ok && gap < tol::kLimitGap && tail && agree <= tol::kPartitionAgreement;
            parts += fmt(" M=%d: gap %.2e tail %s indep %.2e;", M, gap, tail ? "ok" : "RISES", agree);
        }
        return {ok, fmt("c=6, N in {64..4096}, gap tol %.2f, partition tol %.2f:%s", tol::kLimitGap,
                        tol::kPartitionAgreement, parts.c_str())};
    }

    // C9
    Outcome stream_optimizer()
    {
        const double t = stationary_snr_constant();
        // maximizer of x ln(1 + 1/x^2) sits at x = 1/sqrt(t*)
        const double x = oracle::golden_section_argmax([](double v) { return v * std::log1p(1.0 / (v * v)); }, 0.05, 5.0);
        const double t_oracle = 1.0 / (x * x);
        const double root_err = std::abs(t - t_oracle) / t_oracle;

        const double gg = 1e6;
        const auto dsg = optimal_stream_count(gg, 1.0);
        const double bits = stream_objective(dsg.x_opt, gg) / std::sqrt(gg);
        const double nats = bits * std::numbers::ln2;
        const double nats_err = std::abs(nats - kPrintedCapacityCoefficient) / kPrintedCapacityCoefficient;
        const double bits_err = std::abs(bits - tol::kBitsCoefficient) / tol::kBitsCoefficient;

        double scaling = 0.0;
        for (double base : {1.0, 10.0, 1e3})
            for (double k : {2.0, 3.0, 10.0})
            {
                const double x1 = optimal_stream_count(base, 1.0).x_opt;
                const double xk = optimal_stream_count(k * k * base, 1.0).x_opt;
                scaling = std::max(scaling, std::abs(xk - k * x1) / (k * x1));
            }
        const bool ok = root_err <= tol::kStationaryRel && nats_err <= tol::kPrintedCoefficientRel &&
                        bits_err <= tol::kBitsCoefficientRel && scaling <= tol::kScalingRel;
        return {ok, fmt("t* = %.7f (golden-section rel err %.2e); xi/sqrt(gamma g) = %.5f nats (vs %.4f, rel %.2e), "
                        "%.5f bits (vs %.4f, rel %.2e); scaling err %.2e",
                        t, root_err, nats, kPrintedCapacityCoefficient, nats_err, bits, tol::kBitsCoefficient, bits_err,
                        scaling)};
    }

    // C10
    Outcome fourth_moment_triangle()
    {
        bool ok = true;
        std::string parts;
        for (int M : {2, 4})
            for (double c : {10.0, 20.0})
            {
                const auto emp = empirical_fourth_moment(M, 0.5 * c, 10000, 101);
                const double closed = fourth_moment(M, f_quadrature(c));
                const double z = std::abs(emp.mean - closed) / emp.std_error;
                ok = ok && z <= tol::kSigmas;
                parts += fmt(" m4(M=%d,c=%g) z=%.2f;", M, c, z);
            }
        int bound_failures = 0;
        for (double c : {64.0 / (9.0 * std::numbers::pi), 2.5, 3.0, 4.0, 6.0, 8.0, 10.0, 15.0, 20.0, 30.0, 50.0, 100.0, 200.0})
            if (f_quadrature(c) > f_upper_bound(c))
                ++bound_failures;
        ok = ok && bound_failures == 0;
        parts += fmt(" f above 64/(9 pi c) at %d of 13 c;", bound_failures);
        double worst_z = 0.0;
        for (double c : {2.0, 5.0, 10.0, 20.0, 50.0})
        {
            const auto mc = f_of_c(c, FMethod::MonteCarlo, 200000, 200 + static_cast<std::uint64_t>(c));
            worst_z = std::max(worst_z, std::abs(mc.estimate - f_quadrature(c)) / mc.std_error);
        }
        ok = ok && worst_z <= tol::kSigmas;
        parts += fmt(" f quadrature vs MC max z=%.2f", worst_z);
        return {ok, fmt("tol %.0f sigma:%s", tol::kSigmas, parts.c_str())};
    }

    std::string slurp(const fs::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    // C11
    Outcome cli_determinism()
    {
        const auto root = fs::temp_directory_path() / "spacemimo_acceptance_c11";
        fs::remove_all(root);
        fs::create_directories(root);
        const auto cfg = root / "scenario.cfg";
        std::ofstream(cfg, std::ios::binary)
            << "# shared scenario for every subcommand\n"
               "wavelength_m=0.01\nrange_m=1e6\ntx_aperture_m2=2\nrx_aperture_m2=2\nloss_factor=0.9\n"
               "power_W=1\nbandwidth_Hz=1e6\nnoise_psd_W_per_Hz=4e-16\n"
               "M=4\narea_over_lambda_d=3\ntrials=200\n"
               "M_list=1,2,4\nS_over_ld_list=1,3\ngamma_g_list=1,100\nc_list=4,10\nf_trials=20000\n"
               "cell_counts=64,256\nindependent_partitions=true\n";
        const std::vector<std::string> cmds{"siso",        "mimo-sample", "ergodic", "bounds", "prolate",
                                            "achievability", "design",    "moments", "scan"};
        std::size_t files = 0, mismatches = 0;
        std::string failed;
        for (const auto &cmd : cmds)
        {
            for (const char *run : {"a", "b"})
            {
                const std::string line = std::string(SPACEMIMO_CLI_PATH) + " " + cmd + " --config " + cfg.string() +
                                         " --out " + (root / cmd / run).string() + " --seed 11 2>/dev/null";
                if (std::system(line.c_str()) != 0)
                    failed += " " + cmd;
            }
            if (!fs::exists(root / cmd / "a"))
                continue;
            for (const auto &e : fs::directory_iterator(root / cmd / "a"))
            {
                ++files;
                if (slurp(e.path()) != slurp(root / cmd / "b" / e.path().filename()))
                    ++mismatches;
            }
        }
        const bool ok = failed.empty() && mismatches == 0 && files > 0;
        return {ok, fmt("9 subcommands run twice, %zu files compared, %zu differ%s%s", files, mismatches,
                        failed.empty() ? "" : "; failed runs:", failed.c_str())};
    }

    struct Criterion
    {
        int id;
        const char *name;
        std::function<Outcome()> run;
    };

    const std::vector<Criterion> &criteria()
    {
        static const std::vector<Criterion> list{
            {1, "SISO consistency", siso_consistency},
            {2, "Hadamard factorization spectra", hadamard_spectra},
            {3, "per-realization upper bound", upper_bound_per_realization},
            {4, "expected lower bound", lower_bound_in_mean},
            {5, "large-region asymptote", large_region_asymptote},
            {6, "Frobenius identities", frobenius_identities},
            {7, "plateau degrees of freedom", plateau_count},
            {8, "discretized antenna convergence", limit_convergence},
            {9, "stream-count optimizer", stream_optimizer},
            {10, "fourth-moment triangle", fourth_moment_triangle},
            {11, "CLI determinism", cli_determinism},
        };
        return list;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"acceptance criteria"};
    int only = 0;
    app.add_option("--criterion", only, "run a single criterion (1-11)")->check(CLI::Range(1, 11));
    CLI11_PARSE(app, argc, argv);

    int failed = 0;
    for (const auto &c : criteria())
    {
        if (only != 0 && c.id != only)
            continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = c.run();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << "C" << c.id << ' ' << (o.pass ? "PASS" : "FAIL") << ' ' << c.name << ": " << o.detail << " ["
                  << fmt("%.1f", secs) << " s]" << std::endl;
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
